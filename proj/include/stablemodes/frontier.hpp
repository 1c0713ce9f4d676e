// Copyright 2026 The stablemodes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STABLEMODES_FRONTIER_HPP_
#define STABLEMODES_FRONTIER_HPP_

// Frontier curves in the (α, r) plane and the unimodality map of Z_α^r.
//
//   R(α)  = sup_x φ(x),  φ(x) = -1 - x f'(x)/f(x),
//           so that h_α^{-s} = (s - φ) f ≥ 0 everywhere iff s ≥ R(α);
//   R̃(α) = α sup_y U_α(y);
//   R̂(α) = α sup_x V_α(x).
//
// All three equal α for α ≤ 1/2. For α > 1/2 the power Z_α^r fails to be
// unimodal exactly when -R(α) < r < -α.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "stablemodes/density.hpp"
#include "stablemodes/errors.hpp"
#include "stablemodes/parallel.hpp"
#include "stablemodes/specfun.hpp"
#include "stablemodes/types.hpp"

namespace stablemodes {

struct FrontierBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Proved bounds on R(α).
inline FrontierBounds frontier_bounds(double alpha) {
  if (alpha <= 0.5) return {alpha, alpha};
  const double s = std::sin(kPi * alpha);
  return {1.0 / (4.0 * (1.0 - alpha)),
          std::min(alpha / (s * s), alpha / (1.0 - alpha))};
}

// φ sampled on a log grid, with its maximum located by local refinement.
struct ProfileScan {
  double alpha = 0.0;
  std::vector<double> x;
  std::vector<double> phi;
  double argmax = 0.0;
  double max_value = 0.0;
  double max_error = 0.0;
};

namespace frontier_detail {

inline constexpr int kScanPoints = 1024;
inline constexpr double kScanLog10Min = -6.0;
inline constexpr double kScanLog10Max = 6.0;
inline constexpr int kRefineRounds = 3;
inline constexpr int kRefinePoints = 32;

// Samples fn on n log-spaced points of [10^lo, 10^hi] and returns the index
// of the largest value.
template <class Fn>
std::size_t log_scan(Fn&& fn, double lo, double hi, int n,
                     std::vector<double>& xs, std::vector<double>& vs) {
  std::size_t best = xs.size();
  for (int i = 0; i < n; ++i) {
    const double x = std::pow(10.0, lo + (hi - lo) * i / (n - 1));
    const double v = fn(x);
    xs.push_back(x);
    vs.push_back(v);
    if (best == xs.size() - 1 || v > vs[best]) best = xs.size() - 1;
  }
  return best;
}

inline ProfileScan scan_profile(double alpha) {
  const StabilityIndex index(alpha);
  ProfileScan s;
  s.alpha = alpha;
  double err_at_best = 0.0;
  auto eval = [&](double x) { return evaluate_density(index, x).profile; };
  double lo = kScanLog10Min;
  double hi = kScanLog10Max;
  std::size_t best = log_scan(eval, lo, hi, kScanPoints, s.x, s.phi);
  // A maximum on the right edge means the peak lies further out (α near 1/2).
  while (best == s.x.size() - 1 && hi < 300.0) {
    const double step = (hi - lo) / (kScanPoints - 1);
    const double new_hi = std::min(300.0, hi + 6.0);
    const int n = static_cast<int>(std::ceil((new_hi - hi) / step));
    std::vector<double> xs;
    std::vector<double> vs;
    log_scan(eval, hi + step, new_hi, n, xs, vs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s.x.push_back(xs[i]);
      s.phi.push_back(vs[i]);
      if (vs[i] > s.phi[best]) best = s.x.size() - 1;
    }
    hi = new_hi;
  }
  double left = std::log10(s.x[best > 0 ? best - 1 : best]);
  double right = std::log10(s.x[std::min(best + 1, s.x.size() - 1)]);
  double best_x = s.x[best];
  double best_v = s.phi[best];
  for (int round = 0; round < kRefineRounds; ++round) {
    std::vector<double> xs;
    std::vector<double> vs;
    const std::size_t k = log_scan(eval, left, right, kRefinePoints, xs, vs);
    if (vs[k] > best_v) {
      best_v = vs[k];
      best_x = xs[k];
    }
    const double lx = std::log10(best_x);
    const double width = (right - left) / (kRefinePoints - 1);
    left = lx - width;
    right = lx + width;
  }
  const DensityPoint p = evaluate_density(index, best_x);
  err_at_best = p.profile_error;
  s.argmax = best_x;
  s.max_value = best_v;
  s.max_error = err_at_best;
  return s;
}

inline std::shared_ptr<const ProfileScan> cached_profile(double alpha) {
  static parallel::AlphaCache<ProfileScan> cache;
  return cache.get(alpha, [alpha] { return scan_profile(alpha); });
}

// Maximum of fn over x > 0: log scan of [10^lo, 10^hi], widened to the
// right while the maximum sits on the edge, then Brent refinement.
template <class Fn>
std::pair<double, double> maximize_log(Fn&& fn, double lo, double hi, int n) {
  std::vector<double> xs;
  std::vector<double> vs;
  std::size_t best = log_scan(fn, lo, hi, n, xs, vs);
  while (best == xs.size() - 1 && hi < 300.0) {
    lo = hi;
    hi += 6.0;
    xs.clear();
    vs.clear();
    best = log_scan(fn, lo, hi, n / 4, xs, vs);
  }
  const double a = std::log10(xs[best > 0 ? best - 1 : best]);
  const double b = std::log10(xs[std::min(best + 1, xs.size() - 1)]);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::brent_find_minima(
      [&](double lx) { return -fn(std::pow(10.0, lx)); }, a, b, 40, iters);
  const double x = std::pow(10.0, r.first);
  const double v = -r.second;
  if (v >= vs[best]) return {x, v};
  return {xs[best], vs[best]};
}

}  // namespace frontier_detail

// max φ, cached per α.
inline ProfileScan profile_maximum(StabilityIndex alpha) {
  return *frontier_detail::cached_profile(alpha.value());
}

// C(s) = min_x h_α^{-s}(x) / f_α(x) = min_x (s - φ(x)) over the refined
// profile grid; R(α) is the smallest s with C(s) ≥ 0.
inline double frontier_criterion(StabilityIndex alpha, double s) {
  const auto scan = frontier_detail::cached_profile(alpha.value());
  double m = s - scan->max_value;
  for (double v : scan->phi) m = std::min(m, s - v);
  return m;
}

struct FrontierSolve {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Upper bound had to be widened by 5%.
  bool widened = false;
};

inline FrontierSolve solve_R(StabilityIndex index, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double alpha = index.value();
  FrontierSolve out;
  if (alpha <= 0.5) {
    out.value = out.bracket_lo = out.bracket_hi = alpha;
    return out;
  }
  const FrontierBounds b = frontier_bounds(alpha);
  double lo = b.lower;
  double hi = b.upper;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  if (frontier_criterion(index, lo) >= 0.0) {
    // The frontier sits on the lower bound within noise.
    out.value = lo;
    return out;
  }
  if (frontier_criterion(index, hi) < 0.0) {
    hi *= 1.05;
    out.widened = true;
    out.bracket_hi = hi;
    if (frontier_criterion(index, hi) < 0.0) {
      throw NumericalFault("criterion fails at the widened upper bound " +
                           std::to_string(hi) + " for alpha " +
                           std::to_string(alpha));
    }
  }
  double c_lo = frontier_criterion(index, lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at double resolution
    const double c = frontier_criterion(index, mid);
    if (c < c_lo) {
      throw NumericalFault("criterion not monotone on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
    }
    if (c >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      c_lo = c;
    }
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

inline double compute_R(StabilityIndex alpha, double tol) {
  return solve_R(alpha, tol).value;
}

struct SupremumPoint {
  double argmax = 0.0;
  double value = 0.0;  // α times the supremum
};

inline SupremumPoint R_tilde_point(StabilityIndex alpha) {
  const auto [x, v] = frontier_detail::maximize_log(
      [&](double y) { return u_alpha(alpha, y); }, -3.0, 6.0, 256);
  return {x, alpha.value() * v};
}

inline SupremumPoint R_hat_point(StabilityIndex alpha) {
  const auto [x, v] = frontier_detail::maximize_log(
      [&](double y) { return v_alpha(alpha, y); }, -3.0, 9.0, 256);
  return {x, alpha.value() * v};
}

inline double compute_R_tilde(StabilityIndex alpha, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (alpha.value() <= 0.5) return alpha.value();
  return R_tilde_point(alpha).value;
}

inline double compute_R_hat(StabilityIndex alpha, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (alpha.value() <= 0.5) return alpha.value();
  return R_hat_point(alpha).value;
}

struct FrontierPoint {
  double alpha = 0.0;
  double R = 0.0;
  double R_tilde = 0.0;
  double R_hat = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double tol = 0.0;
  // Empty on success, otherwise the failure message.
  std::string status;

  bool ok() const { return status.empty(); }
};

inline FrontierPoint frontier_point(double alpha, double tol) {
  FrontierPoint p;
  p.alpha = alpha;
  p.tol = tol;
  try {
    const StabilityIndex index(alpha);
    const FrontierBounds b = frontier_bounds(alpha);
    p.lower_bound = b.lower;
    p.upper_bound = b.upper;
    p.R = compute_R(index, tol);
    p.R_tilde = compute_R_tilde(index, tol);
    p.R_hat = compute_R_hat(index, tol);
  } catch (const std::exception& e) {
    p.status = e.what();
    return p;
  }
  if (p.R < p.lower_bound - tol || p.R > p.upper_bound + tol) {
    p.status = "R outside [lower, upper]";
  } else if (p.R > p.R_tilde + tol || p.R_tilde > p.R_hat + tol) {
    p.status = "R <= R_tilde <= R_hat violated";
  }
  return p;
}

inline std::vector<double> alpha_grid(double alpha_min, double alpha_max,
                                      int steps) {
  if (!(alpha_min > 0.0 && alpha_max < 1.0 && alpha_min <= alpha_max) ||
      steps < 1) {
    throw DomainError("alpha grid needs 0 < min <= max < 1 and steps >= 1");
  }
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? alpha_min
                        : alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
  }
  return out;
}

inline std::vector<FrontierPoint> sweep(double alpha_min, double alpha_max,
                                        int steps, double tol,
                                        unsigned threads = parallel::default_threads()) {
  if (!(alpha_min < alpha_max) && steps > 1) {
    throw DomainError("sweep needs alpha_min < alpha_max");
  }
  const std::vector<double> grid = alpha_grid(alpha_min, alpha_max, steps);
  std::vector<FrontierPoint> out(grid.size());
  parallel::parallel_for(
      grid.size(), [&](std::size_t i) { out[i] = frontier_point(grid[i], tol); },
      threads);
  return out;
}

// ----------------------------------------------------------------------
// Mode structure of f_α^r.

enum class Verdict { kMonotone, kUnimodalNonmonotone, kNotUnimodal };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kMonotone:
      return "monotone";
    case Verdict::kUnimodalNonmonotone:
      return "unimodal_nonmonotone";
    case Verdict::kNotUnimodal:
      return "not_unimodal";
  }
  return "unknown";
}

struct ModeProfile {
  BoundaryClass boundary_class = BoundaryClass::kZero;
  int interior_maxima = 0;
  Verdict verdict = Verdict::kUnimodalNonmonotone;
  // From the grid count: density decreasing away from 0+.
  bool boundary_maximum = false;
  Verdict numeric_verdict = Verdict::kUnimodalNonmonotone;
};

// log f_α on a uniform grid in log x wide enough to show both tails.
struct LogDensityGrid {
  double alpha = 0.0;
  std::vector<double> log_x;
  std::vector<double> log_f;
  std::vector<double> error;  // absolute error of log f
};

namespace frontier_detail {

inline constexpr double kGridStep = 0.02;
inline constexpr double kGridLogXMax = 69.0;  // x ≈ 1e30
inline constexpr double kGridLeftDepth = -1000.0;
inline constexpr double kModeNoiseFloor = 1e-11;

inline LogDensityGrid build_log_density_grid(double alpha) {
  const StabilityIndex index(alpha);
  double t_lo = 0.0;
  while (log_stable_density(index, std::exp(t_lo)) > kGridLeftDepth) t_lo -= 1.0;
  const int n = static_cast<int>(std::ceil((kGridLogXMax - t_lo) / kGridStep)) + 1;
  LogDensityGrid g;
  g.alpha = alpha;
  g.log_x.resize(n);
  g.log_f.resize(n);
  g.error.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = t_lo + kGridStep * i;
    const DensityPoint p = evaluate_density(index, std::exp(t));
    g.log_x[i] = t;
    g.log_f[i] = p.log_f;
    g.error[i] = p.rel_error;
  }
  return g;
}

inline std::shared_ptr<const LogDensityGrid> cached_grid(double alpha) {
  static parallel::AlphaCache<LogDensityGrid> cache;
  return cache.get(alpha, [alpha] { return build_log_density_grid(alpha); });
}

}  // namespace frontier_detail

inline LogDensityGrid log_density_grid(StabilityIndex alpha) {
  return *frontier_detail::cached_grid(alpha.value());
}

struct ModeCount {
  bool boundary_maximum = false;
  int interior_maxima = 0;
  // The sequence was still rising at its far end (grid too short).
  bool unterminated = false;
};

// Counts maxima of a sequence with hysteresis: a maximum needs a rise and a
// fall each larger than the local noise threshold. A first significant
// move downward is reported as a maximum at the left boundary.
inline ModeCount count_maxima(const std::vector<double>& v,
                              const std::vector<double>& noise) {
  enum class Trend { kNone, kUp, kDown };
  ModeCount out;
  if (v.empty()) return out;
  Trend trend = Trend::kNone;
  double ref = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = std::max(frontier_detail::kModeNoiseFloor, noise[i]);
    switch (trend) {
      case Trend::kNone:
        if (v[i] > ref + d) {
          trend = Trend::kUp;
          ref = v[i];
        } else if (v[i] < ref - d) {
          trend = Trend::kDown;
          out.boundary_maximum = true;
          ref = v[i];
        }
        break;
      case Trend::kUp:
        if (v[i] > ref) {
          ref = v[i];
        } else if (v[i] < ref - d) {
          ++out.interior_maxima;
          trend = Trend::kDown;
          ref = v[i];
        }
        break;
      case Trend::kDown:
        if (v[i] < ref) {
          ref = v[i];
        } else if (v[i] > ref + d) {
          trend = Trend::kUp;
          ref = v[i];
        }
        break;
    }
  }
  out.unterminated = trend != Trend::kDown;
  return out;
}

// Maxima of y ↦ f_α^r(y) counted on the cached grid. With y = x^r,
// log f_α^r(y) = -log|r| + (1 - r) log x + log f_α(x).
inline ModeCount count_power_density_modes(StabilityIndex alpha, PowerExponent r) {
  const auto grid = frontier_detail::cached_grid(alpha.value());
  const double rr = r.value();
  const std::size_t n = grid->log_x.size();
  std::vector<double> v(n);
  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Increasing y: increasing x for r > 0, decreasing x for r < 0.
    const std::size_t j = rr > 0.0 ? i : n - 1 - i;
    const double t = grid->log_x[j];
    v[i] = (1.0 - rr) * t + grid->log_f[j];
    noise[i] = 10.0 * (grid->error[j] +
                       4.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(v[i]) + std::abs(grid->log_f[j])));
  }
  return count_maxima(v, noise);
}

// Classification from the theorem, given R(α).
inline Verdict analytic_verdict(double alpha, double r, double R) {
  const bool tie = std::abs(r + alpha) <= kBoundaryTieTolerance;
  if (tie) {
    return alpha <= 0.5 ? Verdict::kMonotone : Verdict::kUnimodalNonmonotone;
  }
  if (r > -alpha) return Verdict::kUnimodalNonmonotone;
  if (alpha <= 0.5 || r <= -R) return Verdict::kMonotone;
  return Verdict::kNotUnimodal;
}

inline Verdict numeric_verdict(const ModeCount& c) {
  if (c.boundary_maximum) {
    return c.interior_maxima == 0 ? Verdict::kMonotone : Verdict::kNotUnimodal;
  }
  return c.interior_maxima <= 1 ? Verdict::kUnimodalNonmonotone
                                : Verdict::kNotUnimodal;
}

inline ModeProfile classify_point(StabilityIndex alpha, PowerExponent r,
                                  double tol) {
  const double a = alpha.value();
  const double rr = r.value();
  ModeProfile m;
  m.boundary_class = boundary_limits(alpha, r).boundary_class;
  const double R = compute_R(alpha, tol);
  m.verdict = analytic_verdict(a, rr, R);
  const ModeCount count = count_power_density_modes(alpha, r);
  m.interior_maxima = count.interior_maxima;
  m.boundary_maximum = count.boundary_maximum;
  m.numeric_verdict = numeric_verdict(count);
  if (count.unterminated || m.numeric_verdict != m.verdict) {
    throw DiscrepancyError(
        "mode count disagrees with the classification at alpha=" +
        std::to_string(a) + ", r=" + std::to_string(rr) + ": expected " +
        to_string(m.verdict) + ", counted " + to_string(m.numeric_verdict) +
        " (boundary max " + (count.boundary_maximum ? "yes" : "no") +
        ", interior maxima " + std::to_string(count.interior_maxima) + ")");
  }
  return m;
}

struct MapCell {
  double alpha = 0.0;
  double r = 0.0;
  ModeProfile profile;
  // Empty on success.
  std::string status;
};

// r grid values r_min + (r_max - r_min) j / (r_steps - 1).
inline std::vector<MapCell> mode_map(const std::vector<double>& alphas,
                                     const std::vector<double>& rs, double tol,
                                     unsigned threads = parallel::default_threads()) {
  std::vector<MapCell> cells(alphas.size() * rs.size());
  parallel::parallel_for(
      cells.size(),
      [&](std::size_t k) {
        MapCell& c = cells[k];
        c.alpha = alphas[k / rs.size()];
        c.r = rs[k % rs.size()];
        try {
          c.profile = classify_point(StabilityIndex(c.alpha), PowerExponent(c.r), tol);
        } catch (const std::exception& e) {
          c.status = e.what();
        }
      },
      threads);
  return cells;
}

}  // namespace stablemodes

#endif  // STABLEMODES_FRONTIER_HPP_
