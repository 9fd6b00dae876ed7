/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace laxsynth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Sequence of vectors indexed by knot or by sample.
using VecList = std::vector<Vec>;

/// A real number or +infinity.
///
/// Conjugate evaluations return this instead of a floating-point infinity
/// so that "outside the domain" is always an explicit branch.
class ExtendedReal {
 public:
  ExtendedReal() = default;  // +infinity
  explicit ExtendedReal(double v) : finite_(true), value_(v) {}

  static ExtendedReal infinity() { return ExtendedReal(); }

  bool is_finite() const { return finite_; }
  explicit operator bool() const { return finite_; }

  double value() const {
    if (!finite_) throw std::logic_error("ExtendedReal: value() of +infinity");
    return value_;
  }
  double value_or(double fallback) const { return finite_ ? value_ : fallback; }

  ExtendedReal operator+(double rhs) const {
    return finite_ ? ExtendedReal(value_ + rhs) : ExtendedReal();
  }

 private:
  bool finite_ = false;
  double value_ = 0.0;
};

class EmptyControlSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCost : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UncoveredPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateDelta : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace laxsynth
