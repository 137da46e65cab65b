// Copyright 2026 The bsqlab Authors
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

#ifndef BSQ_ERRORS_HPP
#define BSQ_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated input contract. The CLI maps this family to exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Numerical breakdown (NaN/Inf, failed contraction, energy monitor).
/// The CLI maps this family to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(long step, double time)
      : NumericalError("divergence at step " + std::to_string(step) +
                       " (t = " + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}

  long step() const { return step_; }
  double time() const { return time_; }

 private:
  long step_;
  double time_;
};

class ContractionFailure : public NumericalError {
 public:
  ContractionFailure(const std::string& what, std::vector<double> ratios)
      : NumericalError(what), ratios_(std::move(ratios)) {}

  const std::vector<double>& ratios() const { return ratios_; }

 private:
  std::vector<double> ratios_;
};

class MonitorError : public NumericalError {
 public:
  MonitorError(const std::string& what, double t_begin, double t_end)
      : NumericalError(what), t_begin_(t_begin), t_end_(t_end) {}

  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }

 private:
  double t_begin_;
  double t_end_;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace bsq

#endif  // BSQ_ERRORS_HPP
