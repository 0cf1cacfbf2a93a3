// Copyright 2026 The Transmon Chaos Authors
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

#ifndef TRANSMON_ERRORS_HPP
#define TRANSMON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace transmon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector lengths or out-of-range site indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid physical parameters or option values.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds a configured hard cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A tangent vector or separation collapsed to zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Too many realizations of an ensemble failed.
class EnsembleError : public Error {
 public:
  using Error::Error;
};

/// The ODE solver could not continue. Carries the last time it reached.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_good_time)
      : Error(what + " (last good t = " + std::to_string(last_good_time) + ")"),
        last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace transmon

#endif  // TRANSMON_ERRORS_HPP
