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

#ifndef MWP_GEOMETRY_HPP
#define MWP_GEOMETRY_HPP

#include <vector>

#include "mwp/chart.hpp"

namespace mwp {

// Brute-force tensor pipeline: metric -> Christoffel -> curvature, computed
// directly from the metric-component expressions with exact jet derivatives.
//
// Curvature sign convention (chosen so the warped-product curvature formulas
// hold literally, and calibrated on the unit sphere):
//     R(X,Y)Z = nabla_Y nabla_X Z - nabla_X nabla_Y Z + nabla_{[X,Y]} Z
//     K(X,Y)  = g(R(X,Y)X, Y) / (|X|^2 |Y|^2 - g(X,Y)^2)
//     S(X,Y)  = trace(Z -> R(X,Z)Y)
// Unit sphere: K = +1, S = +g. Hyperbolic plane: S = -g.

/// Dense rank-3 holder for Christoffel symbols Gamma^k_{ij}.
class Christoffel {
public:
  Christoffel() : d_(0) {}
  explicit Christoffel(Eigen::Index d)
      : d_(d), v_(static_cast<std::size_t>(d * d * d), 0.0) {}

  Eigen::Index dim() const { return d_; }

  double& operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) {
    return v_[static_cast<std::size_t>((k * d_ + i) * d_ + j)];
  }
  double operator()(Eigen::Index k, Eigen::Index i, Eigen::Index j) const {
    return v_[static_cast<std::size_t>((k * d_ + i) * d_ + j)];
  }

  /// Matrix slice (Gamma_i)^k_j = Gamma^k_{ij} for a fixed direction i.
  Eigen::MatrixXd direction(Eigen::Index i) const;

private:
  Eigen::Index d_;
  std::vector<double> v_;
};

/// Dense rank-4 holder for the curvature operator components R^l_{kij},
/// defined by R(e_i, e_j) e_k = R^l_{kij} e_l.
class RiemannTensor {
public:
  RiemannTensor() : d_(0) {}
  explicit RiemannTensor(Eigen::Index d)
      : d_(d), v_(static_cast<std::size_t>(d * d * d * d), 0.0) {}

  Eigen::Index dim() const { return d_; }

  double& operator()(Eigen::Index l, Eigen::Index k, Eigen::Index i,
                     Eigen::Index j) {
    return v_[static_cast<std::size_t>(((l * d_ + k) * d_ + i) * d_ + j)];
  }
  double operator()(Eigen::Index l, Eigen::Index k, Eigen::Index i,
                    Eigen::Index j) const {
    return v_[static_cast<std::size_t>(((l * d_ + k) * d_ + i) * d_ + j)];
  }

  /// R(X, Y) Z as a vector.
  Eigen::VectorXd apply(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                        const Eigen::VectorXd& Z) const;

  double max_abs() const;

private:
  Eigen::Index d_;
  std::vector<double> v_;
};

/// Everything the pipeline produces at one point. Building it costs one
/// jet evaluation per metric component plus O(d^4) contraction work.
struct PointGeometry {
  Eigen::VectorXd x;
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  std::vector<Jet2> metric_jets;  // row-major jets of the metric entries
  Christoffel gamma;
  std::vector<Christoffel> dgamma;  // dgamma[m](k,i,j) = d_m Gamma^k_{ij}
  RiemannTensor riemann;
  Eigen::MatrixXd ricci;

  /// g(R(X,Y)Z, W).
  double lowered(const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                 const Eigen::VectorXd& Z, const Eigen::VectorXd& W) const;
};

PointGeometry geometry_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                          const MetallicParams* params);

/// Metric values at x; checks symmetry (1e-12) and positive definiteness.
Eigen::MatrixXd metric_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                          const MetallicParams* params);

Christoffel christoffel_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                           const MetallicParams* params);

RiemannTensor riemann_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                         const MetallicParams* params);

Eigen::MatrixXd ricci_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                         const MetallicParams* params);

/// Sectional curvature of the plane spanned by X, Y (must be independent).
double sectional_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                    const MetallicParams* params);

/// grad^k = g^{kl} d_l phi.
Eigen::VectorXd gradient_at(const ChartManifold& chart, const Expression& phi,
                            const Eigen::VectorXd& x,
                            const MetallicParams* params);

/// |grad phi|^2 = g^{kl} d_k phi d_l phi.
double grad_norm_sq_at(const ChartManifold& chart, const Expression& phi,
                       const Eigen::VectorXd& x, const MetallicParams* params);

/// Hess(phi)_{ij} = d_i d_j phi - Gamma^k_{ij} d_k phi.
Eigen::MatrixXd hessian_at(const ChartManifold& chart, const Expression& phi,
                           const Eigen::VectorXd& x,
                           const MetallicParams* params);

/// Laplacian = g^{ij} Hess(phi)_{ij}.
double laplacian_at(const ChartManifold& chart, const Expression& phi,
                    const Eigen::VectorXd& x, const MetallicParams* params);

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_{ij} X^i Y^j for a vector field Y
/// given as per-component expressions.
Eigen::VectorXd covariant_derivative_at(const ChartManifold& chart,
                                        const std::vector<Expression>& field,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& X,
                                        const MetallicParams* params);

/// Max-abs entry over coordinate directions i of
/// (nabla_i J) = d_i J + Gamma_i J - J Gamma_i at one point.
double nabla_operator_residual_at(const LinearOperatorField& J,
                                  const Eigen::VectorXd& x,
                                  const MetallicParams* params);

/// Max of nabla_operator_residual_at over deterministically sampled points.
double nabla_operator_residual(const LinearOperatorField& J,
                               const MetallicParams* params, std::uint64_t seed,
                               const std::string& check_id, int samples);

/// Max-abs entry of nabla g at one point (zero by construction up to
/// roundoff; the oracle's self-test).
double nabla_metric_residual_at(const ChartManifold& chart,
                                const Eigen::VectorXd& x,
                                const MetallicParams* params);

}  // namespace mwp

#endif  // MWP_GEOMETRY_HPP
