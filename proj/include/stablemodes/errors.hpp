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

#ifndef STABLEMODES_ERRORS_HPP_
#define STABLEMODES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stablemodes {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical method failed to reach its accuracy contract. The best
// estimate obtained so far is carried along.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double best_estimate,
                double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// Caller violated a documented precondition (e.g. r below the frontier).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two independent routes to the same answer disagree.
class DiscrepancyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal numerical inconsistency (e.g. a monotone criterion that is not).
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stablemodes

#endif  // STABLEMODES_ERRORS_HPP_
