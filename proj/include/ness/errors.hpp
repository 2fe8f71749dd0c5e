// Copyright 2026 The ness-chain Authors
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

#include <stdexcept>
#include <string>

namespace ness {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// True for failures of the numerics (as opposed to bad input).
  virtual bool numerical() const noexcept { return true; }
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
  bool numerical() const noexcept override { return false; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  bool numerical() const noexcept override { return false; }
};

/// Input violated a documented precondition (e.g. non-Hermitian matrix).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A Bohr frequency too close to zero for the secular approximation.
class NearDegenerateFrequency : public Error {
 public:
  using Error::Error;
};

class StepSizeError : public Error {
 public:
  StepSizeError(const std::string& what, double suggested_dt)
      : Error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double suggested_dt_;
};

class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

class NonUniqueSteadyState : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Matrix is not a valid density matrix (negative eigenvalue beyond drift).
class InvalidState : public Error {
 public:
  using Error::Error;
};

}  // namespace ness
