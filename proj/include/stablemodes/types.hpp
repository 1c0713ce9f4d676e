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

#ifndef STABLEMODES_TYPES_HPP_
#define STABLEMODES_TYPES_HPP_

#include <cmath>
#include <numbers>
#include <string>

#include "stablemodes/errors.hpp"

namespace stablemodes {

inline constexpr double kPi = std::numbers::pi;

// Distance kept from the degenerate indices 0 and 1.
inline constexpr double kAlphaGuard = 1e-6;

// Stable index α of a positive stable law, restricted to
// [kAlphaGuard, 1 - kAlphaGuard].
class StabilityIndex {
 public:
  explicit StabilityIndex(double alpha) : alpha_(alpha) {
    if (!(alpha >= kAlphaGuard && alpha <= 1.0 - kAlphaGuard)) {
      throw DomainError("stability index must lie in [1e-6, 1 - 1e-6], got " +
                        std::to_string(alpha));
    }
  }

  double value() const { return alpha_; }
  // 1 - α
  double complement() const { return 1.0 - alpha_; }
  // α / (1 - α): the exponent of the Kanter representation.
  double kanter_power() const { return alpha_ / (1.0 - alpha_); }

  friend bool operator==(StabilityIndex, StabilityIndex) = default;

 private:
  double alpha_;
};

// Non-zero real power applied to Z_α.
class PowerExponent {
 public:
  explicit PowerExponent(double r) : r_(r) {
    if (!(std::isfinite(r) && r != 0.0)) {
      throw DomainError("power exponent must be finite and non-zero");
    }
  }
  double value() const { return r_; }

 private:
  double r_;
};

enum class Regime { kSeries, kIntegral, kAsymptotic };

inline const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kSeries:
      return "series";
    case Regime::kIntegral:
      return "integral";
    case Regime::kAsymptotic:
      return "asymptotic";
  }
  return "unknown";
}

// A value together with the absolute error bound the evaluator commits to.
struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  Regime regime = Regime::kSeries;
  // Set when the true value is below the smallest normal double and 0 was
  // returned instead.
  bool underflow = false;
};

}  // namespace stablemodes

#endif  // STABLEMODES_TYPES_HPP_
