// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qprob {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mismatched spaces, unknown factorizations, wrong operand shapes.
class StructuralError : public Error {
  public:
    using Error::Error;
};

/// A numeric invariant of a domain object does not hold within tolerance.
class ValidationError : public Error {
  public:
    ValidationError(std::string object, std::string invariant, double residual,
                    double tol)
        : Error(format(object, invariant, residual, tol)),
          object_(std::move(object)), invariant_(std::move(invariant)),
          residual_(residual), tol_(tol) {}

    const std::string &object() const noexcept { return object_; }
    const std::string &invariant() const noexcept { return invariant_; }
    double residual() const noexcept { return residual_; }
    double tolerance() const noexcept { return tol_; }

  private:
    static std::string format(const std::string &object,
                              const std::string &invariant, double residual,
                              double tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " (residual %.3e, tolerance %.3e)",
                      residual, tol);
        return object + ": invariant '" + invariant + "' violated" + buf;
    }

    std::string object_;
    std::string invariant_;
    double residual_;
    double tol_;
};

/// Conditioning on an eventuality whose probability is at or below the
/// zero-probability threshold.
class ZeroProbabilityError : public Error {
  public:
    ZeroProbabilityError(std::string what_conditioned, double probability,
                         double threshold)
        : Error(format(what_conditioned, probability, threshold)),
          probability_(probability), threshold_(threshold) {}

    double probability() const noexcept { return probability_; }
    double threshold() const noexcept { return threshold_; }

  private:
    static std::string format(const std::string &what, double p, double t) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      ": zero-probability condition (p = %.3e <= "
                      "zero-probability threshold %.3e)",
                      p, t);
        return "cannot condition on " + what + buf;
    }

    double probability_;
    double threshold_;
};

/// Malformed scenario text.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Command/scenario combination that cannot be executed.
class UsageError : public Error {
  public:
    using Error::Error;
};

} // namespace qprob
