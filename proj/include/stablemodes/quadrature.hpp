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

#ifndef STABLEMODES_QUADRATURE_HPP_
#define STABLEMODES_QUADRATURE_HPP_

// Adaptive Gauss-Kronrod (10/21 point) integration of vector-valued
// integrands over a finite interval partitioned by breakpoints. Several
// integrals sharing an expensive kernel are computed from one pass.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace stablemodes::quadrature {

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

template <std::size_t N>
struct Result {
  std::array<double, N> value{};
  std::array<double, N> abs_error{};
  // Integral of the absolute value, the scale for relative tolerances.
  std::array<double, N> l1{};
  bool converged = false;
  int evaluations = 0;
};

namespace detail {

// Kronrod abscissae in [0,1]; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208805452486, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  std::array<double, N> value{};
  std::array<double, N> error{};
  std::array<double, N> l1{};
  double priority = 0.0;
};

template <std::size_t N, class F>
Segment<N> gk21(F& f, double a, double b) {
  Segment<N> s;
  s.a = a;
  s.b = b;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, N> kronrod{};
  std::array<double, N> gauss{};
  std::array<double, N> absolute{};

  const std::array<double, N> fc = f(center);
  for (std::size_t i = 0; i < N; ++i) {
    kronrod[i] = kWgk[10] * fc[i];
    absolute[i] = kWgk[10] * std::abs(fc[i]);
  }
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const std::array<double, N> f1 = f(center - dx);
    const std::array<double, N> f2 = f(center + dx);
    for (std::size_t i = 0; i < N; ++i) {
      kronrod[i] += kWgk[j] * (f1[i] + f2[i]);
      absolute[i] += kWgk[j] * (std::abs(f1[i]) + std::abs(f2[i]));
      if (j % 2 == 1) gauss[i] += kWg[j / 2] * (f1[i] + f2[i]);
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    s.value[i] = kronrod[i] * half;
    s.error[i] = std::abs((kronrod[i] - gauss[i]) * half);
    s.l1[i] = absolute[i] * std::abs(half);
    // Round-off floor.
    s.error[i] = std::max(
        s.error[i], 50.0 * std::numeric_limits<double>::epsilon() * s.l1[i]);
  }
  return s;
}

}  // namespace detail

// Integrates f over [breaks.front(), breaks.back()], using every
// breakpoint as an initial subdivision point. f maps double to
// std::array<double, N>; it must be finite on the open subintervals.
template <std::size_t N, class F>
Result<N> integrate(F&& f, std::span<const double> breaks,
                    const Options& opts = {}) {
  using Seg = detail::Segment<N>;
  Result<N> result;
  if (breaks.size() < 2) {
    result.converged = true;
    return result;
  }

  std::vector<Seg> pieces;
  pieces.reserve(breaks.size() - 1);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (breaks[k + 1] > breaks[k]) {
      pieces.push_back(detail::gk21<N>(f, breaks[k], breaks[k + 1]));
      result.evaluations += 21;
    }
  }

  std::array<double, N> scale{};
  for (const Seg& s : pieces) {
    for (std::size_t i = 0; i < N; ++i) scale[i] += s.l1[i];
  }
  auto priority = [&](const Seg& s) {
    double p = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double denom =
          std::max({opts.abs_tol, scale[i] * opts.rel_tol,
                    std::numeric_limits<double>::min()});
      p = std::max(p, s.error[i] / denom);
    }
    return p;
  };
  auto cmp = [](const Seg& x, const Seg& y) { return x.priority < y.priority; };
  std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> heap(cmp);
  std::array<double, N> total{};
  std::array<double, N> total_err{};
  std::array<double, N> total_l1{};
  for (Seg& s : pieces) {
    s.priority = priority(s);
    for (std::size_t i = 0; i < N; ++i) {
      total[i] += s.value[i];
      total_err[i] += s.error[i];
      total_l1[i] += s.l1[i];
    }
    heap.push(s);
  }

  auto done = [&] {
    for (std::size_t i = 0; i < N; ++i) {
      const double target = std::max(opts.abs_tol, opts.rel_tol * total_l1[i]);
      if (total_err[i] > target) return false;
    }
    return true;
  };

  int splits = 0;
  std::vector<Seg> frozen;
  while (!done() && !heap.empty() && splits < opts.max_subdivisions) {
    Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) <
            1e3 * std::numeric_limits<double>::epsilon() *
                std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Cannot be refined further; keep its contribution as is.
      frozen.push_back(worst);
      continue;
    }
    Seg left = detail::gk21<N>(f, worst.a, mid);
    Seg right = detail::gk21<N>(f, mid, worst.b);
    result.evaluations += 42;
    ++splits;
    for (std::size_t i = 0; i < N; ++i) {
      total[i] += left.value[i] + right.value[i] - worst.value[i];
      total_err[i] += left.error[i] + right.error[i] - worst.error[i];
      total_l1[i] += left.l1[i] + right.l1[i] - worst.l1[i];
      scale[i] = total_l1[i];
    }
    left.priority = priority(left);
    right.priority = priority(right);
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the pieces to avoid drift from incremental updates.
  result.value = {};
  result.abs_error = {};
  result.l1 = {};
  auto accumulate = [&](const Seg& s) {
    for (std::size_t i = 0; i < N; ++i) {
      result.value[i] += s.value[i];
      result.abs_error[i] += s.error[i];
      result.l1[i] += s.l1[i];
    }
  };
  while (!heap.empty()) {
    accumulate(heap.top());
    heap.pop();
  }
  for (const Seg& s : frozen) accumulate(s);
  result.converged = true;
  for (std::size_t i = 0; i < N; ++i) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * result.l1[i]);
    if (!(result.abs_error[i] <= target) || !std::isfinite(result.value[i])) {
      result.converged = false;
    }
  }
  return result;
}

template <std::size_t N, class F>
Result<N> integrate(F&& f, std::initializer_list<double> breaks,
                    const Options& opts = {}) {
  return integrate<N>(std::forward<F>(f),
                      std::span<const double>(breaks.begin(), breaks.size()),
                      opts);
}

// Scalar convenience wrapper.
template <class F>
Result<1> integrate_scalar(F&& f, double a, double b, const Options& opts = {}) {
  auto wrapped = [&](double x) { return std::array<double, 1>{f(x)}; };
  const std::array<double, 2> breaks = {a, b};
  return integrate<1>(wrapped, std::span<const double>(breaks), opts);
}

}  // namespace stablemodes::quadrature

#endif  // STABLEMODES_QUADRATURE_HPP_
