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

#ifndef MWP_METALLIC_HPP
#define MWP_METALLIC_HPP

#include <cstdint>
#include <Eigen/Dense>

#include "mwp/common.hpp"

namespace mwp {

/// Metallic number sigma_{p,q}: the positive root of x^2 - p x - q = 0.
double metallic_number(int p, int q);

/// Parameters (p, q) of a metallic structure together with the two roots of
/// its characteristic polynomial. sigbar is the second root p - sigma (which
/// is negative), so that sigma + sigbar = p and sigma * sigbar = -q.
struct MetallicParams {
  int p = 1;
  int q = 1;
  double sigma = 0.0;
  double sigbar = 0.0;

  static MetallicParams make(int p, int q);
};

/// g_n of the generalized secondary Fibonacci sequence
/// g_{n+1} = p g_n + q g_{n-1}, g_0 = 0, g_1 = 1, in exact integer
/// arithmetic. Throws DomainError on 64-bit overflow.
std::int64_t fibonacci(int p, int q, int n);

using LinearOperator = Eigen::MatrixXd;

/// Max-abs entry of J^2 - p J - q I; zero iff J is metallic.
double metallic_residual(const LinearOperator& J, const MetallicParams& params);

/// The two residuals of metric compatibility: (symmetry) G J - J^T G, i.e.
/// g(JX, Y) = g(X, JY), and (identity) J^T G J - p G J - q G. The verdict
/// folds them by max; reports keep both.
struct CompatibilityResidual {
  double symmetry = 0.0;
  double identity = 0.0;

  double max() const { return symmetry > identity ? symmetry : identity; }
};

CompatibilityResidual compatibility_residual(const LinearOperator& J,
                                             const Eigen::MatrixXd& G,
                                             const MetallicParams& params);

/// J_{+-} = +-((2 sigma - p)/2) F + (p/2) I for an almost product structure
/// F (F^2 = I, checked to 1e-10).
LinearOperator induced_metallic(const LinearOperator& F, int sign,
                                const MetallicParams& params);

/// F_{+-} = +-(2/(2 sigma - p)) J - (p/(2 sigma - p)) I for a metallic J
/// (checked to 1e-10). Inverse of induced_metallic at matching signs.
LinearOperator induced_product(const LinearOperator& J, int sign,
                               const MetallicParams& params);

/// Complementary projectors onto the sigbar- and sigma-eigenspaces of a
/// metallic J:
///   l = (-J + sigma I) / (2 sigma - p),
///   m = ( J + (sigma - p) I) / (2 sigma - p).
struct ProjectorPair {
  LinearOperator l;
  LinearOperator m;
};

ProjectorPair projectors(const LinearOperator& J, const MetallicParams& params);

/// Max-abs entry of J^{n+1} - g_{n+1} J - q g_n I, with the power computed
/// by repeated multiplication; zero for every metallic J. (Induction from
/// J^2 = p J + q I puts a factor q on the constant term; it is invisible at
/// q = 1.) n <= 12 to keep magnitudes in range.
double power_identity_residual(const LinearOperator& J,
                               const MetallicParams& params, int n);

/// Residual of the identity with the constant term g_n I instead of
/// q g_n I. Coincides with power_identity_residual when q = 1 and stays
/// bounded away from zero otherwise; reported for comparison.
double power_identity_residual_literal(const LinearOperator& J,
                                       const MetallicParams& params, int n);

}  // namespace mwp

#endif  // MWP_METALLIC_HPP
