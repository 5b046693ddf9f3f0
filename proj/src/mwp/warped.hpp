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

#ifndef MWP_WARPED_HPP
#define MWP_WARPED_HPP

#include <utility>

#include "mwp/geometry.hpp"

namespace mwp {

/// Warped product of a base and fiber chart by a positive warping function
/// on the base. Building one assembles the (n+m)-dim chart with metric
/// diag(g1, f^2 g2); the warp is checked positive at sampled base points.
class WarpedProductSpec {
public:
  static WarpedProductSpec make(ChartPtr base, ChartPtr fiber, Expression warp,
                                const MetallicParams* params = nullptr);

  const ChartPtr& base() const { return base_; }
  const ChartPtr& fiber() const { return fiber_; }
  const Expression& warp() const { return warp_; }
  const ChartPtr& product() const { return product_; }

  Eigen::Index n() const { return base_->dim(); }
  Eigen::Index m() const { return fiber_->dim(); }
  Eigen::Index dim() const { return n() + m(); }

  /// True when the warp is the constant 1 (plain Riemannian product).
  bool is_plain_product() const;

  // Coordinate-block projections and lifts.
  Eigen::VectorXd base_part(const Eigen::VectorXd& v) const;
  Eigen::VectorXd fiber_part(const Eigen::VectorXd& v) const;
  Eigen::VectorXd lift_horizontal(const Eigen::VectorXd& base_vec) const;
  Eigen::VectorXd lift_vertical(const Eigen::VectorXd& fiber_vec) const;
  Eigen::VectorXd assemble(const Eigen::VectorXd& base_vec,
                           const Eigen::VectorXd& fiber_vec) const;

private:
  ChartPtr base_;
  ChartPtr fiber_;
  Expression warp_;
  ChartPtr product_;
};

/// A factor vector tagged with its lift kind.
struct LiftedVector {
  enum class Kind { Horizontal, Vertical };
  Kind kind;
  Eigen::VectorXd factor;

  static LiftedVector horizontal(Eigen::VectorXd v) {
    return {Kind::Horizontal, std::move(v)};
  }
  static LiftedVector vertical(Eigen::VectorXd v) {
    return {Kind::Vertical, std::move(v)};
  }
};

/// Right side of the warped-product connection formula
///   nabla_(X1,X2)(Y1,Y2) = ( nabla^1_X1 Y1 - 1/2 g2(X2,Y2) grad(f^2),
///     nabla^2_X2 Y2 + 1/(2 f^2) X1(f^2) Y2 + 1/(2 f^2) Y1(f^2) X2 )
/// with grad taken in g1. X is a fixed tangent vector at the point; Y is a
/// field given by per-component expressions on each factor.
Eigen::VectorXd connection_closed_form(const WarpedProductSpec& spec,
                                       const Eigen::VectorXd& point,
                                       const Eigen::VectorXd& X,
                                       const std::vector<Expression>& y_base,
                                       const std::vector<Expression>& y_fiber,
                                       const MetallicParams* params);

/// Closed-form curvature by case:
///  1: R(X,Y)Z       = lift of R_1(X1,Y1)Z1                 (H,H,H)
///  2: R(U,X)Y       = (1/f) Hess(f)(X,Y) U                 (V,H,H)
///  3: R(X,Y)U = 0   (H,H,V)  and  R(U,V)X = 0              (V,V,H)
///  4: R(U,V)W       = lift of R_2 - |grad f|^2/f^2 [g(U,W)V - g(V,W)U]
///                                                           (V,V,V)
///  5: R(X,U)V       = (1/f) g(U,V) nabla_X grad(f)         (H,V,V)
/// g in cases 4 and 5 is the warped metric (f^2 g2 on vertical pairs).
/// Cases 2, 4, 5 require fiber dimension m > 1 (lemma hypothesis).
Eigen::VectorXd riemann_closed_form(const WarpedProductSpec& spec, int case_no,
                                    const Eigen::VectorXd& point,
                                    const std::vector<LiftedVector>& inputs,
                                    const MetallicParams* params);

/// Closed-form Ricci by case (m > 1 required):
///  1: S(X,Y) = S_1(X1,Y1) - (m/f) Hess(f)(X,Y)             (H,H)
///  2: S(X,V) = 0                                           (H,V)
///  3: S(V,W) = S_2(V2,W2) - [Lap(f)/f + (m-1)|grad f|^2/f^2] g(V,W)
///                                                           (V,V)
double ricci_closed_form(const WarpedProductSpec& spec, int case_no,
                         const Eigen::VectorXd& point,
                         const std::vector<LiftedVector>& inputs,
                         const MetallicParams* params);

/// Product case (warp identically 1): max residual over samples between the
/// oracle curvature/Ricci of the product chart and the pairwise factor
/// values, for full (not necessarily lifted) tangent vectors.
std::pair<double, double> product_case_residuals(const WarpedProductSpec& spec,
                                                 const MetallicParams* params,
                                                 std::uint64_t seed,
                                                 const std::string& check_id,
                                                 int samples);

// Scalars of the warp at a base point (all with respect to g1).
double warp_value(const WarpedProductSpec& spec, const Eigen::VectorXd& xb,
                  const MetallicParams* params);
Eigen::MatrixXd warp_hessian(const WarpedProductSpec& spec,
                             const Eigen::VectorXd& xb,
                             const MetallicParams* params);
Eigen::VectorXd warp_gradient(const WarpedProductSpec& spec,
                              const Eigen::VectorXd& xb,
                              const MetallicParams* params);
double warp_grad_norm_sq(const WarpedProductSpec& spec,
                         const Eigen::VectorXd& xb,
                         const MetallicParams* params);
double warp_laplacian(const WarpedProductSpec& spec, const Eigen::VectorXd& xb,
                      const MetallicParams* params);

}  // namespace mwp

#endif  // MWP_WARPED_HPP
