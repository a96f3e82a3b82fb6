// Copyright 2026 The qcdmmw Authors
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

#ifndef QCDMMW_ERRORS_H_
#define QCDMMW_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qcdmmw {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: shape mismatches, out-of-range parameters, operators
// that violate a documented precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

// A channel description failed one of its structural checks (isometry,
// completeness, density). The message names the check and its residual.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& check, double residual,
                  const std::string& message)
      : Error(message), check_(check), residual_(residual) {}

  const std::string& check() const { return check_; }
  double residual() const { return residual_; }

 private:
  std::string check_;
  double residual_;
};

// A numerical kernel did not converge or could not meet its error budget.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The request is well-formed but needs machinery this library does not
// provide (promise gaps that would require amplification).
class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcdmmw

#endif  // QCDMMW_ERRORS_H_
