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

// stablemodes command-line driver.
//
//   stablemodes frontier           R, R_tilde, R_hat and bounds on an alpha grid (CSV)
//   stablemodes modes              mode classification of Z^r on an (alpha, r) grid (CSV)
//   stablemodes density            f, f' (and optionally f^r, h^r) on a log-spaced x grid (CSV)
//   stablemodes cm-check           exact finite-order complete monotonicity of (x^a + t)e^{-x^a}
//   stablemodes verify-identities  Monte Carlo and quadrature gates (JSON)
//   stablemodes selftest           quick internal consistency checks
//
// Exit status: 0 success, 1 gate or per-point failure, 2 usage error.
// The worker count defaults to $STABLEMODES_THREADS.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablemodes/stablemodes.hpp"

#ifndef STABLEMODES_VERSION
#define STABLEMODES_VERSION "unknown"
#endif

namespace {

using nlohmann::json;
using namespace stablemodes;

constexpr int kExitOk = 0;
constexpr int kExitGate = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the file named by `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + path);
  out << text;
}

// Boost reads a leading 0 as an octal prefix, so integers go through here.
cm::Rational parse_integer(std::string s, const std::string& original) {
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError("not a rational number: " + original);
  }
  const auto nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  const cm::Rational v{boost::multiprecision::cpp_int(s)};
  return neg ? cm::Rational(-v) : v;
}

cm::Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const cm::Rational num = parse_integer(s.substr(0, slash), s);
    const cm::Rational den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw UsageError("zero denominator: " + s);
    return num / den;
  }
  const auto dot = s.find('.');
  if (dot == std::string::npos) return parse_integer(s, s);
  // Exact decimal: 0.75 -> 75/100.
  cm::Rational q = parse_integer(s.substr(0, dot) + s.substr(dot + 1), s);
  for (std::size_t i = dot + 1; i < s.size(); ++i) q /= 10;
  return q;
}

std::vector<double> linear_grid(double lo, double hi, int steps, const char* what) {
  if (steps < 1 || !(lo <= hi) || (steps > 1 && !(lo < hi)) || (steps == 1 && lo != hi)) {
    throw UsageError(std::string("empty or inconsistent ") + what + " range");
  }
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    out[i] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
  return out;
}

void require_alphas(const std::vector<double>& alphas) {
  for (double a : alphas) {
    if (!(a >= kAlphaGuard && a <= 1.0 - kAlphaGuard)) {
      throw UsageError("alpha values must lie inside (0, 1)");
    }
  }
}

json header(const std::string& command) {
  json j;
  j["tool"] = "stablemodes";
  j["version"] = STABLEMODES_VERSION;
  j["command"] = command;
  return j;
}

// ----------------------------------------------------------------------

struct FrontierArgs {
  double alpha_min = 0.55;
  double alpha_max = 0.95;
  int steps = 9;
  double tol = 1e-4;
  std::string out;
  std::string format = "csv";
};

int run_frontier(const FrontierArgs& a, unsigned threads) {
  const std::vector<double> grid = linear_grid(a.alpha_min, a.alpha_max, a.steps, "alpha");
  require_alphas(grid);
  if (!(a.tol > 0.0)) throw UsageError("tol must be positive");
  std::vector<FrontierPoint> pts(grid.size());
  parallel::parallel_for(
      grid.size(), [&](std::size_t i) { pts[i] = frontier_point(grid[i], a.tol); }, threads);
  const bool all_ok =
      std::all_of(pts.begin(), pts.end(), [](const FrontierPoint& p) { return p.ok(); });

  if (a.format == "json") {
    json j = header("frontier");
    j["config"] = {{"alpha_min", a.alpha_min}, {"alpha_max", a.alpha_max},
                   {"steps", a.steps}, {"tol", a.tol}};
    for (const FrontierPoint& p : pts) {
      j["points"].push_back({{"alpha", p.alpha}, {"R", p.R}, {"R_tilde", p.R_tilde},
                             {"R_hat", p.R_hat}, {"lower", p.lower_bound},
                             {"upper", p.upper_bound}, {"tol", p.tol},
                             {"status", p.ok() ? "ok" : p.status}});
    }
    emit(a.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "alpha,R,R_tilde,R_hat,lower,upper,tol" << (all_ok ? "" : ",status") << "\n";
    for (const FrontierPoint& p : pts) {
      os << num(p.alpha) << ',' << num(p.R) << ',' << num(p.R_tilde) << ',' << num(p.R_hat)
         << ',' << num(p.lower_bound) << ',' << num(p.upper_bound) << ',' << num(p.tol);
      if (!all_ok) os << ',' << (p.ok() ? "ok" : "\"" + p.status + "\"");
      os << "\n";
    }
    emit(a.out, os.str());
  }
  for (const FrontierPoint& p : pts) {
    if (!p.ok()) std::cerr << "frontier: alpha=" << num(p.alpha) << ": " << p.status << "\n";
  }
  return all_ok ? kExitOk : kExitGate;
}

// ----------------------------------------------------------------------

struct ModesArgs {
  double alpha_min = 0.1;
  double alpha_max = 0.9;
  int alpha_steps = 9;
  double r_min = -3.0;
  double r_max = 2.0;
  int r_steps = 9;
  std::vector<double> alphas;
  std::vector<double> rs;
  double tol = 1e-3;
  std::string out;
  std::string format = "csv";
};

int run_modes(const ModesArgs& a, unsigned threads) {
  const std::vector<double> alphas =
      a.alphas.empty() ? linear_grid(a.alpha_min, a.alpha_max, a.alpha_steps, "alpha") : a.alphas;
  const std::vector<double> rs =
      a.rs.empty() ? linear_grid(a.r_min, a.r_max, a.r_steps, "r") : a.rs;
  require_alphas(alphas);
  if (!(a.tol > 0.0)) throw UsageError("tol must be positive");
  const std::vector<MapCell> cells = mode_map(alphas, rs, a.tol, threads);
  const bool all_ok =
      std::all_of(cells.begin(), cells.end(), [](const MapCell& c) { return c.status.empty(); });

  if (a.format == "json") {
    json j = header("modes");
    j["config"] = {{"alphas", alphas}, {"rs", rs}, {"tol", a.tol}};
    for (const MapCell& c : cells) {
      j["cells"].push_back({{"alpha", c.alpha},
                            {"r", c.r},
                            {"boundary_class", to_string(c.profile.boundary_class)},
                            {"interior_maxima", c.profile.interior_maxima},
                            {"verdict", to_string(c.profile.verdict)},
                            {"status", c.status.empty() ? "ok" : c.status}});
    }
    emit(a.out, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "alpha,r,boundary_class,interior_maxima,verdict" << (all_ok ? "" : ",status") << "\n";
    for (const MapCell& c : cells) {
      os << num(c.alpha) << ',' << num(c.r) << ',' << to_string(c.profile.boundary_class) << ','
         << c.profile.interior_maxima << ',' << to_string(c.profile.verdict);
      if (!all_ok) os << ',' << (c.status.empty() ? "ok" : "\"" + c.status + "\"");
      os << "\n";
    }
    emit(a.out, os.str());
  }
  for (const MapCell& c : cells) {
    if (!c.status.empty()) {
      std::cerr << "modes: alpha=" << num(c.alpha) << " r=" << num(c.r) << ": " << c.status
                << "\n";
    }
  }
  return all_ok ? kExitOk : kExitGate;
}

// ----------------------------------------------------------------------

struct DensityArgs {
  double alpha = 0.5;
  double x_min = 0.01;
  double x_max = 100.0;
  int points = 200;
  std::optional<double> r;
  std::string out;
};

int run_density(const DensityArgs& a) {
  require_alphas({a.alpha});
  if (!(a.x_min > 0.0)) throw UsageError("x-min must be positive");
  const std::vector<double> lg = linear_grid(std::log(a.x_min), std::log(a.x_max), a.points, "x");
  if (a.r && *a.r == 0.0) throw UsageError("r must be non-zero");
  const StabilityIndex alpha(a.alpha);
  std::vector<std::string> rows(lg.size());
  parallel::parallel_for(lg.size(), [&](std::size_t i) {
    const double x = std::exp(lg[i]);
    const EvalResult f = stable_density(alpha, x);
    const EvalResult fp = stable_density_prime(alpha, x);
    std::string row = num(x) + ',' + num(f.value) + ',' + num(fp.value) + ',' + to_string(f.regime);
    if (a.r) {
      row += ',' + num(power_density(alpha, PowerExponent(*a.r), x)) + ',' +
             num(h_function(alpha, *a.r, x));
    }
    rows[i] = row + "\n";
  });
  std::string text = a.r ? "x,f,f_prime,regime,f_r,h_r\n" : "x,f,f_prime,regime\n";
  for (const std::string& row : rows) text += row;
  emit(a.out, text);
  return kExitOk;
}

// ----------------------------------------------------------------------

struct CmArgs {
  std::string alpha = "3/4";
  std::string t = "4/3";
  int max_order = 5;
  std::vector<std::string> at;
  std::string format = "text";
};

std::string poly_text(const cm::Poly& q) {
  std::string s = "[";
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += (i ? ", " : "") + cm::to_string(q[i]);
  }
  return s + "]";
}

int run_cm_check(const CmArgs& a) {
  const cm::Rational alpha = parse_rational(a.alpha);
  const cm::Rational t = parse_rational(a.t);
  if (!(alpha > 0 && alpha <= 1)) throw UsageError("alpha must lie in (0, 1]");
  if (a.max_order < 1) throw UsageError("max-order must be at least 1");
  std::vector<cm::Rational> at;
  for (const std::string& s : a.at) at.push_back(parse_rational(s));
  const cm::CmReport rep = cm::cm_check(alpha, t, a.max_order);

  if (a.format == "json") {
    json j = header("cm-check");
    j["config"] = {{"alpha", cm::to_string(alpha)}, {"t", cm::to_string(t)},
                   {"max_order", a.max_order}};
    j["status"] = cm::to_string(rep.status);
    for (const cm::OrderResult& o : rep.orders) {
      std::vector<std::string> coeffs;
      for (const cm::Rational& c : o.q) coeffs.push_back(cm::to_string(c));
      j["orders"].push_back({{"order", o.order},
                             {"q_ascending", coeffs},
                             {"primitive_ascending", [&] {
                                std::vector<std::string> p;
                                for (const auto& c : cm::primitive_part(o.q))
                                  p.push_back(cm::to_string(c));
                                return p;
                              }()},
                             {"method", o.decision.method},
                             {"values_at", [&] {
                                json v = json::object();
                                for (const cm::Rational& mu : at)
                                  v[cm::to_string(mu)] = cm::to_string(cm::evaluate(o.q, mu));
                                return v;
                              }()}});
    }
    if (rep.first_failing_order) j["first_failing_order"] = *rep.first_failing_order;
    if (rep.witness_mu) j["witness_mu"] = cm::to_string(*rep.witness_mu);
    if (rep.witness_lambda) j["witness_lambda"] = *rep.witness_lambda;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "alpha=" << cm::to_string(alpha) << " t=" << cm::to_string(t)
              << " max_order=" << a.max_order << "\n";
    std::cout << "Q_n(mu) coefficients, ascending powers of mu = lambda^(-alpha)\n";
    for (const cm::OrderResult& o : rep.orders) {
      std::cout << "order " << o.order << ": Q = " << poly_text(o.q) << "\n";
      std::cout << "  content = " << cm::to_string(cm::content(o.q))
                << ", primitive = " << poly_text(cm::primitive_part(o.q)) << "\n";
      std::cout << "  sign: " << o.decision.method;
      if (o.decision.witness) {
        std::cout << ", Q(" << cm::to_string(*o.decision.witness)
                  << ") = " << cm::to_string(cm::evaluate(o.q, *o.decision.witness));
      }
      std::cout << "\n";
      for (const cm::Rational& mu : at) {
        const cm::Rational v = cm::evaluate(o.q, mu);
        const cm::Rational w = cm::evaluate(cm::primitive_part(o.q), mu);
        std::cout << "  Q(" << cm::to_string(mu) << ") = " << cm::to_string(v)
                  << ", primitive(" << cm::to_string(mu) << ") = " << cm::to_string(w) << " = "
                  << num(cm::to_double(w)) << "\n";
      }
    }
    std::cout << "status: " << cm::to_string(rep.status);
    if (rep.first_failing_order) std::cout << " first_failing_order=" << *rep.first_failing_order;
    if (rep.witness_mu) {
      std::cout << " witness_mu=" << cm::to_string(*rep.witness_mu)
                << " witness_lambda=" << num(*rep.witness_lambda);
    }
    std::cout << "\n";
  }
  return rep.status == cm::CmStatus::kInconclusive ? kExitGate : kExitOk;
}

// ----------------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::size_t n = 100000;
  std::size_t laplace_n = 1000000;
  std::string out;
  std::string exponent_name = mc::to_string(mc::kFrozenKanterExponent);
};

std::map<std::string, mc::KanterExponent> exponent_names() {
  std::map<std::string, mc::KanterExponent> out;
  for (auto e : {mc::KanterExponent::kMinusInverseAlpha, mc::KanterExponent::kAlphaMinusOneOverAlpha,
                 mc::KanterExponent::kMinusComplementOverAlpha}) {
    out[mc::to_string(e)] = e;
  }
  return out;
}

json gate(const std::string& name, bool pass, const std::string& summary) {
  return {{"name", name}, {"pass", pass}, {"summary", summary}};
}

json report_json(const mc::IdentityReport& r) {
  return {{"statistic", mc::to_string(r.statistic)},
          {"discrepancy", r.discrepancy},
          {"threshold", r.threshold},
          {"pass", r.pass}};
}

int run_verify(const VerifyArgs& a, unsigned threads) {
  if (a.n < 100 || a.laplace_n < 100) throw UsageError("sample sizes must be at least 100");
  json j = header("verify-identities");
  j["config"] = {{"seed", a.seed}, {"n", a.n}, {"laplace_n", a.laplace_n},
                 {"kanter_exponent", a.exponent_name}};
  const mc::KanterExponent exponent = exponent_names().at(a.exponent_name);
  json gates = json::array();

  // Kanter exponent.
  const mc::CalibrationReport cal = mc::calibrate_kanter_exponent(a.seed, a.laplace_n);
  {
    json g = gate("kanter_exponent",
                  cal.unique && cal.selected == mc::kFrozenKanterExponent,
                  std::string("kanter_exponent: frozen=") + mc::to_string(mc::kFrozenKanterExponent));
    for (const auto& c : cal.candidates) {
      g["candidates"].push_back(
          {{"exponent", mc::to_string(c.exponent)}, {"worst_z", c.worst_z}, {"pass", c.pass}});
    }
    gates.push_back(g);
  }

  // Laplace identity: Monte Carlo and quadrature.
  for (double alpha : {0.2, 0.5, 0.8}) {
    mc::BatchSpec spec{a.seed, a.laplace_n, threads};
    const mc::SampleBatch z = mc::sample_Z(StabilityIndex(alpha), spec, mc::kStreamZ, exponent);
    const mc::IdentityReport rep = mc::laplace_grid_check(
        z.values, alpha, {0.5, 1.0, 2.0},
        [alpha](double l) { return std::exp(-std::pow(l, alpha)); });
    json g = gate("laplace_mc alpha=" + label(alpha), rep.pass,
                  "laplace_mc: alpha=" + label(alpha) + (rep.pass ? " pass" : " fail"));
    g["report"] = report_json(rep);
    gates.push_back(g);

    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(laplace_transform(StabilityIndex(alpha), lambda) -
                                       std::exp(-std::pow(lambda, alpha))));
    }
    json q = gate("laplace_quadrature alpha=" + label(alpha), worst <= 1e-7,
                  "laplace_quadrature: alpha=" + label(alpha) + (worst <= 1e-7 ? " pass" : " fail"));
    q["max_abs_error"] = worst;
    q["threshold"] = 1e-7;
    gates.push_back(q);
  }

  // Factorizations.
  for (const auto& [alpha, r] : std::vector<std::pair<double, double>>{{0.4, 0.5}, {0.7, 3.0}}) {
    for (mc::Identity which : {mc::Identity::kAdditive, mc::Identity::kMultiplicative}) {
      mc::BatchSpec spec{a.seed, a.n, threads};
      const mc::IdentityCheck chk = mc::verify_identity(which, StabilityIndex(alpha), r, spec);
      json g = gate(std::string(mc::to_string(which)) + " alpha=" + label(alpha) + " r=" + label(r),
                    chk.pass(),
                    std::string(mc::to_string(which)) + ": alpha=" + label(alpha) + " r=" + label(r) +
                        (chk.pass() ? " pass" : " fail"));
      for (const auto& rep : chk.reports) g["reports"].push_back(report_json(rep));
      gates.push_back(g);
    }
  }

  // Exact fifth derivative at (3/4, 4/3).
  {
    const cm::CmReport rep = cm::cm_check(cm::Rational(3, 4), cm::Rational(4, 3), 5);
    const cm::Poly q5 = cm::q_polynomial(cm::Rational(3, 4), cm::Rational(4, 3), 5);
    const cm::Poly expected = {81, -27, -135, -150, 35, 195};
    const bool shape = cm::primitive_part(q5) == expected;
    const cm::Rational at = cm::evaluate(cm::primitive_part(q5), cm::Rational(4, 5));
    const bool ok = rep.first_failing_order == 5 && shape && at < 0;
    std::string summary = "remark4a: first_failing_order=" +
                          (rep.first_failing_order ? std::to_string(*rep.first_failing_order)
                                                   : std::string("none"));
    json g = gate("remark4a", ok, summary);
    g["q5_primitive_matches"] = shape;
    g["normalized_q5_at_4_5"] = cm::to_string(at);
    if (rep.witness_mu) g["witness_mu"] = cm::to_string(*rep.witness_mu);
    gates.push_back(g);
  }

  // Log-convexity threshold.
  {
    const auto th = cm::log_convexity_threshold(cm::Rational(3, 4));
    gates.push_back(gate("log_convexity_threshold", th.t_threshold == cm::Rational(4, 3),
                         "log_convexity_threshold: alpha=3/4 t=" + cm::to_string(th.t_threshold)));
  }

  // Kanter function certificates.
  {
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double alpha = 0.05 + 0.1125 * (i - 1);
      worst = std::max(worst,
                       check_lemma1_inequalities(StabilityIndex(alpha), 10000).max_violation());
    }
    json g = gate("kanter_inequalities", worst <= 1e-10,
                  std::string("kanter_inequalities: ") + (worst <= 1e-10 ? "pass" : "fail"));
    g["max_violation"] = worst;
    gates.push_back(g);
  }

  bool all = true;
  for (const json& g : gates) {
    if (!g["pass"].get<bool>()) {
      all = false;
      std::cerr << "verify-identities: gate failed: " << g["name"].get<std::string>() << "\n";
    }
  }
  j["gates"] = gates;
  j["pass"] = all;
  emit(a.out, j.dump(2) + "\n");
  return all ? kExitOk : kExitGate;
}

// ----------------------------------------------------------------------

int run_selftest() {
  struct Check {
    std::string name;
    bool pass;
  };
  std::vector<Check> checks;
  {
    double worst = 0.0;
    for (double x = 0.05; x <= 20.0; x *= 1.1) {
      const double v = power_density(StabilityIndex(0.5), PowerExponent(-0.5), x);
      worst = std::max(worst, std::abs(v - std::exp(-x * x / 4) / std::sqrt(kPi)));
    }
    checks.push_back({"closed form alpha=1/2", worst <= 1e-10});
  }
  for (double alpha : {0.2, 0.5, 0.8}) {
    checks.push_back({"unit mass alpha=" + label(alpha),
                      std::abs(total_mass(StabilityIndex(alpha)) - 1.0) <= 1e-8});
  }
  {
    double worst = 0.0;
    for (double u = 0.01; u < kPi; u += 0.01) {
      worst = std::max(worst, std::abs(b_alpha(StabilityIndex(0.5), u).b - 2 * std::cos(u / 2)));
    }
    checks.push_back({"kanter b at alpha=1/2", worst <= 1e-12});
  }
  {
    const auto rep = cm::cm_check(cm::Rational(1), cm::Rational(2), 3);
    checks.push_back({"cm_check alpha=1 t=2 fails at order 3", rep.first_failing_order == 3});
  }
  checks.push_back(
      {"R(0.75) inside bounds", [] {
         const double R = compute_R(StabilityIndex(0.75), 1e-4);
         return R >= 1.0 && R <= 1.5;
       }()});
  bool all = true;
  for (const Check& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && c.pass;
  }
  return all ? kExitOk : kExitGate;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive stable densities, unimodality frontiers and factorization checks"};
  app.set_version_flag("--version", std::string(STABLEMODES_VERSION));
  app.require_subcommand(1);
  unsigned threads = parallel::default_threads();
  app.add_option("--threads", threads, "worker threads (default $STABLEMODES_THREADS)")
      ->check(CLI::PositiveNumber);

  FrontierArgs fa;
  auto* frontier = app.add_subcommand("frontier", "tabulate R, R_tilde, R_hat with bounds");
  frontier->add_option("--alpha-min", fa.alpha_min);
  frontier->add_option("--alpha-max", fa.alpha_max);
  frontier->add_option("--steps", fa.steps);
  frontier->add_option("--tol", fa.tol);
  frontier->add_option("-o,--out", fa.out, "output file (default stdout)");
  frontier->add_option("--format", fa.format)->check(CLI::IsMember({"csv", "json"}));

  ModesArgs ma;
  auto* modes = app.add_subcommand("modes", "classify the modes of Z^r on an (alpha, r) grid");
  modes->add_option("--alpha-min", ma.alpha_min);
  modes->add_option("--alpha-max", ma.alpha_max);
  modes->add_option("--alpha-steps", ma.alpha_steps);
  modes->add_option("--r-min", ma.r_min);
  modes->add_option("--r-max", ma.r_max);
  modes->add_option("--r-steps", ma.r_steps);
  modes->add_option("--alphas", ma.alphas, "explicit alpha list (overrides the range)")
      ->delimiter(',');
  modes->add_option("--rs", ma.rs, "explicit r list (overrides the range)")->delimiter(',');
  modes->add_option("--tol", ma.tol);
  modes->add_option("-o,--out", ma.out);
  modes->add_option("--format", ma.format)->check(CLI::IsMember({"csv", "json"}));

  DensityArgs da;
  auto* density = app.add_subcommand("density", "tabulate f and f' on a log-spaced grid");
  density->add_option("--alpha", da.alpha);
  density->add_option("--x-min", da.x_min);
  density->add_option("--x-max", da.x_max);
  density->add_option("--points", da.points);
  density->add_option("--r", da.r, "also tabulate the density of Z^r and h^r");
  density->add_option("-o,--out", da.out);

  CmArgs ca;
  auto* cmcheck = app.add_subcommand("cm-check", "exact finite-order CM check of (x^a + t)e^{-x^a}");
  cmcheck->add_option("--alpha", ca.alpha, "rational, e.g. 3/4");
  cmcheck->add_option("--t", ca.t, "rational, e.g. 4/3");
  cmcheck->add_option("--max-order", ca.max_order);
  cmcheck->add_option("--at", ca.at, "also print Q_n at these mu values")->delimiter(',');
  cmcheck->add_option("--format", ca.format)->check(CLI::IsMember({"text", "json"}));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify-identities", "Monte Carlo and quadrature gates");
  verify->add_option("--seed", va.seed);
  verify->add_option("--n", va.n, "samples per factorization check");
  verify->add_option("--laplace-n", va.laplace_n, "samples per Laplace check");
  verify->add_option("-o,--out", va.out);
  verify
      ->add_option("--kanter-exponent", va.exponent_name,
                   "sampler exponent for the Laplace Monte Carlo gates (diagnostic)")
      ->check(CLI::IsMember(exponent_names()));

  auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (frontier->parsed()) return run_frontier(fa, threads);
    if (modes->parsed()) return run_modes(ma, threads);
    if (density->parsed()) return run_density(da);
    if (cmcheck->parsed()) return run_cm_check(ca);
    if (verify->parsed()) return run_verify(va, threads);
    if (selftest->parsed()) return run_selftest();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGate;
  }
  return kExitUsage;
}
