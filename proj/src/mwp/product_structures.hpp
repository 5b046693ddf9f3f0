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

#ifndef MWP_PRODUCT_STRUCTURES_HPP
#define MWP_PRODUCT_STRUCTURES_HPP

#include "mwp/warped.hpp"

namespace mwp {

/// A metallic structure assembled on a (warped) product chart, either from
/// the canonical block reflection F = pi1 - pi2 or from a pair of factor
/// structures.
struct ProductMetallicStructure {
  enum class Variant { ProjectorPlus, ProjectorMinus, Pairwise };

  Variant variant;
  MetallicParams params;
  LinearOperatorField assembled;
};

/// F = pi1 - pi2 as a constant field diag(+I_n, -I_m) on the product chart.
LinearOperatorField product_structure_F(const WarpedProductSpec& spec);

/// J~_{+-} = +-((2 sigma - p)/2) F + (p/2) I, i.e. diag(sigma I_n,
/// sigbar I_m) for sign +, blocks swapped for sign -. Metallic and
/// compatible with the warped metric at sampled points (checked).
ProductMetallicStructure j_pm_product(const WarpedProductSpec& spec, int sign,
                                      const MetallicParams& params);

/// J~(X,Y) = (J1 X, J2 Y) from factor structures sharing the same (p, q).
/// Both factors must be metallic and compatible with their metric at
/// sampled points for that (p, q).
ProductMetallicStructure j_pair(const WarpedProductSpec& spec,
                                const LinearOperatorField& J1,
                                const LinearOperatorField& J2,
                                const MetallicParams& params);

/// Smooth map between charts given by per-target-coordinate expressions
/// over the source coordinates.
class CoordinateMap {
public:
  static CoordinateMap make(ChartPtr source, ChartPtr target,
                            std::vector<Expression> components);

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x,
                        const MetallicParams* params) const;
  /// Jacobian via jets: D(i,j) = d_j Phi^i.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x,
                           const MetallicParams* params) const;

private:
  ChartPtr source_;
  ChartPtr target_;
  std::vector<Expression> components_;
};

/// Max over samples of |DPhi J1 - (J2 o Phi) DPhi|: zero iff Phi is a
/// metallic map at the tested points.
double metallic_map_residual(const CoordinateMap& phi,
                             const LinearOperatorField& J1,
                             const LinearOperatorField& J2,
                             const MetallicParams& params, std::uint64_t seed,
                             const std::string& check_id, int samples);

/// The three residuals of the locally-metallic characterization for
/// J~ = (J1, J2) on a warped product:
///   a: df^2(J1 X) V = df^2(X) J2 V        (all base X, fiber V)
///   b: g2(X2, J2 Y2) grad(f^2) = g2(X2, Y2) J1(grad f^2)
///   c: direct nabla J~ residual on the warped chart.
/// a and b vanish together exactly when c does. Requires J1, J2 parallel on
/// their factors (throws DomainError otherwise).
struct LocallyMetallicResiduals {
  double condition_a = 0.0;
  double condition_b = 0.0;
  double direct = 0.0;
};

LocallyMetallicResiduals locally_metallic_conditions(
    const WarpedProductSpec& spec, const LinearOperatorField& J1,
    const LinearOperatorField& J2, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples);

/// Residuals of the locally-metallic curvature identities at sampled
/// points/vectors. The (2.11)-style identity is evaluated both with the
/// corrected coefficient order p,q and with the paper's literal order q,p;
/// the power identity uses Fibonacci coefficients up to n_max.
/// Requires nabla J = 0 (throws DomainError otherwise).
struct CurvatureIdentityResiduals {
  double commute = 0.0;          // R(X,Y)JZ = J R(X,Y)Z
  double swap = 0.0;             // R(JX,Y) = R(X,JY)
  double quadratic = 0.0;        // R(JX,JY) = p R(JX,Y) + q R(X,Y)
  double quadratic_literal = 0.0;  // paper order: q R(JX,Y) + p R(X,Y)
  double power = 0.0;            // R(J^{n+1}X,Y) = g_{n+1} R(JX,Y) + q g_n R
};

CurvatureIdentityResiduals curvature_identity_residuals(
    const LinearOperatorField& J, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples, int n_max);

/// Fiber invariance (vertical distribution) residuals:
///   vertical_leak: base block of J~ applied to vertical lifts,
///   hessian_commutation: |H^f(X,Y) J~U - H^f(J~X,Y) U| over samples.
struct FiberInvarianceResiduals {
  double vertical_leak = 0.0;
  double hessian_commutation = 0.0;
};

FiberInvarianceResiduals fiber_invariance_residual(
    const WarpedProductSpec& spec, const ProductMetallicStructure& structure,
    std::uint64_t seed, const std::string& check_id, int samples);

/// Ricci invariance residuals for J~ = (J1, J2):
///   factor_precondition: max |Q_i J_i - J_i Q_i| over factor samples,
///   hessian_defect: max |H^f(J1 X, Y) - H^f(X, J1 Y)|,
///   ricci_defect: max |S~(J~V, W) - S~(V, J~W)| for full product vectors,
///   vertical_symmetry: the same restricted to vertical lifts.
struct RicciInvarianceResiduals {
  double factor_precondition = 0.0;
  double hessian_defect = 0.0;
  double ricci_defect = 0.0;
  double vertical_symmetry = 0.0;
};

RicciInvarianceResiduals ricci_invariance_residuals(
    const WarpedProductSpec& spec, const LinearOperatorField& J1,
    const LinearOperatorField& J2, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples);

/// Block-diagonal assembly of factor operator fields on the product chart.
LinearOperatorField assemble_pair_field(const WarpedProductSpec& spec,
                                        const LinearOperatorField& J1,
                                        const LinearOperatorField& J2);

}  // namespace mwp

#endif  // MWP_PRODUCT_STRUCTURES_HPP
