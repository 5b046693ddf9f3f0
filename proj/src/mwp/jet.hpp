/*
 * Copyright (c) 2026 The mwp Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MWP_JET_HPP
#define MWP_JET_HPP

#include <Eigen/Dense>

namespace mwp {

/// Truncated second-order Taylor value: f, grad f and the full Hessian with
/// respect to a fixed list of independent variables. All operators propagate
/// the derivatives exactly (no finite differencing). Second order is all the
/// curvature pipeline ever needs: Riemann uses second derivatives of the
/// metric components and nothing deeper.
class Jet2 {
public:
  Jet2() : value_(0.0) {}

  static Jet2 constant(double v, Eigen::Index nvars) {
    Jet2 j;
    j.value_ = v;
    j.grad_ = Eigen::VectorXd::Zero(nvars);
    j.hess_ = Eigen::MatrixXd::Zero(nvars, nvars);
    return j;
  }

  static Jet2 variable(double v, Eigen::Index index, Eigen::Index nvars) {
    Jet2 j = constant(v, nvars);
    j.grad_(index) = 1.0;
    return j;
  }

  double value() const { return value_; }
  const Eigen::VectorXd& grad() const { return grad_; }
  const Eigen::MatrixXd& hess() const { return hess_; }
  Eigen::Index nvars() const { return grad_.size(); }

  Jet2 operator-() const {
    Jet2 r = *this;
    r.value_ = -r.value_;
    r.grad_ = -r.grad_;
    r.hess_ = -r.hess_;
    return r;
  }

  friend Jet2 operator+(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.value_ += b.value_;
    r.grad_ += b.grad_;
    r.hess_ += b.hess_;
    return r;
  }

  friend Jet2 operator-(const Jet2& a, const Jet2& b) {
    Jet2 r = a;
    r.value_ -= b.value_;
    r.grad_ -= b.grad_;
    r.hess_ -= b.hess_;
    return r;
  }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.value_ = a.value_ * b.value_;
    r.grad_ = a.value_ * b.grad_ + b.value_ * a.grad_;
    r.hess_ = a.value_ * b.hess_ + b.value_ * a.hess_ +
              a.grad_ * b.grad_.transpose() + b.grad_ * a.grad_.transpose();
    return r;
  }

  friend Jet2 operator*(double s, const Jet2& a) {
    Jet2 r = a;
    r.value_ *= s;
    r.grad_ *= s;
    r.hess_ *= s;
    return r;
  }

  /// 1/x. Caller guarantees value() != 0.
  Jet2 reciprocal() const {
    const double r1 = 1.0 / value_;
    const double r2 = r1 * r1;
    const double r3 = r2 * r1;
    return chain(r1, -r2, 2.0 * r3);
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    return a * b.reciprocal();
  }

  /// Composes with a scalar function given its value and first two
  /// derivatives at value().
  Jet2 chain(double f, double df, double ddf) const {
    Jet2 r;
    r.value_ = f;
    r.grad_ = df * grad_;
    r.hess_ = df * hess_ + ddf * (grad_ * grad_.transpose());
    return r;
  }

  /// Integer power by repeated multiplication (negative allowed when the
  /// value is nonzero).
  Jet2 ipow(long long e) const {
    if (e < 0) return ipow(-e).reciprocal();
    Jet2 acc = constant(1.0, nvars());
    Jet2 base = *this;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n > 0) {
      if (n & 1ULL) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }

private:
  double value_;
  Eigen::VectorXd grad_;
  Eigen::MatrixXd hess_;
};

}  // namespace mwp

#endif  // MWP_JET_HPP
