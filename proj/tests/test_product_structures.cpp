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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "mwp/product_structures.hpp"

using namespace mwp;

namespace {

Expression ex(const char* t) { return Expression::parse(t); }

ChartPtr chart1(const char* name, const char* coord, Interval iv,
                const char* g) {
  return std::make_shared<ChartManifold>(
      ChartManifold::make(name, {coord}, {iv}, {ex(g)}));
}

ChartPtr flat2(const char* name, const char* c0, const char* c1) {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      name, {c0, c1}, {{-0.8, 0.8}, {-0.8, 0.8}},
      {ex("1"), ex("0"), ex("0"), ex("1")}));
}

ChartPtr sphere2() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "sphere", {"theta", "phi"}, {{0.4, 2.7}, {0.1, 6.1}},
      {ex("1"), ex("0"), ex("0"), ex("sin(theta)^2")}));
}

ChartPtr hyperbolic2() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "hplane", {"t", "x"}, {{-0.7, 0.7}, {-1.0, 1.0}},
      {ex("1"), ex("0"), ex("0"), ex("exp(2*t)")}));
}

WarpedProductSpec polar_plane() {
  return WarpedProductSpec::make(chart1("halfline", "u", {0.5, 2.5}, "1"),
                                 chart1("circle", "alpha", {0.1, 6.1}, "1"),
                                 ex("u"));
}

WarpedProductSpec sphere_x_line() {
  return WarpedProductSpec::make(sphere2(),
                                 chart1("line", "s", {-1.0, 1.0}, "1"),
                                 ex("1"));
}

// flat R^2 x_{f} flat R^2 with f = exp(t) (aligned: Hess f diagonal) or
// f = exp(t + s) (skew: Hess f has off-diagonal entries).
WarpedProductSpec flatwarp(bool skew) {
  return WarpedProductSpec::make(flat2("plane_ts", "t", "s"),
                                 flat2("plane_xy", "x", "y"),
                                 skew ? ex("exp(t + s)") : ex("exp(t)"));
}

LinearOperatorField sigma_field(ChartPtr c) {
  const Eigen::Index d = c->dim();
  std::vector<Expression> e(static_cast<std::size_t>(d * d),
                            Expression::number(0.0));
  for (Eigen::Index i = 0; i < d; ++i)
    e[static_cast<std::size_t>(i * d + i)] = Expression::symbol(Sym::Sigma);
  return LinearOperatorField::make(std::move(c), std::move(e));
}

LinearOperatorField sigbar_field(ChartPtr c) {
  const Eigen::Index d = c->dim();
  std::vector<Expression> e(static_cast<std::size_t>(d * d),
                            Expression::number(0.0));
  for (Eigen::Index i = 0; i < d; ++i)
    e[static_cast<std::size_t>(i * d + i)] = Expression::symbol(Sym::Sigbar);
  return LinearOperatorField::make(std::move(c), std::move(e));
}

LinearOperatorField diag_sigma_sigbar(ChartPtr c) {
  return LinearOperatorField::make(
      std::move(c), {Expression::symbol(Sym::Sigma), ex("0"), ex("0"),
                     Expression::symbol(Sym::Sigbar)});
}

}  // namespace

TEST_CASE("product structure F") {
  const WarpedProductSpec spec = polar_plane();
  const LinearOperatorField F = product_structure_F(spec);
  Eigen::VectorXd x(2);
  x << 1.3, 2.0;
  const Eigen::MatrixXd Fv = F.value_at(x, nullptr);
  CHECK(Fv(0, 0) == 1.0);
  CHECK(Fv(1, 1) == -1.0);
  CHECK((Fv * Fv - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() ==
        0.0);
  // g-symmetric for the block metric
  const Eigen::MatrixXd g = metric_at(*spec.product(), x, nullptr);
  CHECK((g * Fv - Fv.transpose() * g).cwiseAbs().maxCoeff() == 0.0);
  // horizontal lifts fixed, vertical lifts negated
  Eigen::VectorXd h = spec.lift_horizontal(Eigen::VectorXd::Ones(1));
  Eigen::VectorXd v = spec.lift_vertical(Eigen::VectorXd::Ones(1));
  CHECK((Fv * h - h).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Fv * v + v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projector-induced structures") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  const WarpedProductSpec spec = polar_plane();
  const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
  const ProductMetallicStructure jm = j_pm_product(spec, -1, mp);
  Eigen::VectorXd x(2);
  x << 1.1, 0.7;
  const Eigen::MatrixXd Jp = jp.assembled.value_at(x, &mp);
  const Eigen::MatrixXd Jm = jm.assembled.value_at(x, &mp);
  CHECK(Jp(0, 0) == doctest::Approx(1.61803398874989).epsilon(1e-14));
  CHECK(Jp(1, 1) == doctest::Approx(-0.61803398874989).epsilon(1e-13));
  // J+ + J- = p I
  CHECK((Jp + Jm - mp.p * Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() <= 1e-15);
  // J+ agrees with induced_metallic applied to F pointwise
  const Eigen::MatrixXd Fv = product_structure_F(spec).value_at(x, &mp);
  CHECK((Jp - induced_metallic(Fv, +1, mp)).cwiseAbs().maxCoeff() <= 1e-14);

  // projectors of J+: l is the fiber projector, m the base projector
  const ProjectorPair pp = projectors(Jp, mp);
  Eigen::MatrixXd pi1 = Eigen::MatrixXd::Zero(2, 2);
  pi1(0, 0) = 1.0;
  Eigen::MatrixXd pi2 = Eigen::MatrixXd::Zero(2, 2);
  pi2(1, 1) = 1.0;
  CHECK((pp.l - pi2).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((pp.m - pi1).cwiseAbs().maxCoeff() <= 1e-12);
  // and for J-, the roles swap
  const ProjectorPair pm = projectors(Jm, mp);
  CHECK((pm.l - pi1).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((pm.m - pi2).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("structure invariants hold at samples for several (p,q)") {
  const WarpedProductSpec spec = flatwarp(false);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const MetallicParams mp = MetallicParams::make(p, q);
      const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
      const DomainSampler s = spec.product()->sampler(9, "test/structs");
      for (int k = 0; k < 5; ++k) {
        const auto pt = s.point(static_cast<std::size_t>(k));
        const Eigen::VectorXd x =
            Eigen::Map<const Eigen::VectorXd>(pt.data(), spec.dim());
        const Eigen::MatrixXd J = jp.assembled.value_at(x, &mp);
        CHECK(metallic_residual(J, mp) <= 1e-10);
        const Eigen::MatrixXd g = metric_at(*spec.product(), x, &mp);
        CHECK(compatibility_residual(J, g, mp).max() <= 1e-10);
      }
    }
}

TEST_CASE("F is parallel exactly when the warp is constant") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    const WarpedProductSpec spec = sphere_x_line();
    const LinearOperatorField F = product_structure_F(spec);
    CHECK(nabla_operator_residual(F, &mp, 3, "test/Fparallel", 15) <= 1e-9);
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    CHECK(nabla_operator_residual(jp.assembled, &mp, 3, "test/Jparallel", 15) <=
          1e-9);
  }
  {
    // polar plane (f = u): nabla_alpha F has the closed form
    //   (nabla_alpha F)^u_alpha = 2u,  (nabla_alpha F)^alpha_u = 2/u.
    const WarpedProductSpec spec = polar_plane();
    const LinearOperatorField F = product_structure_F(spec);
    Eigen::VectorXd x(2);
    const double u = 1.4;
    x << u, 2.0;
    CHECK(nabla_operator_residual_at(F, x, &mp) ==
          doctest::Approx(2 * u).epsilon(1e-12));
    const Christoffel G = christoffel_at(*spec.product(), x, &mp);
    const Eigen::MatrixXd Fv = F.value_at(x, &mp);
    const Eigen::MatrixXd Ga = G.direction(1);
    const Eigen::MatrixXd nab = Ga * Fv - Fv * Ga;
    CHECK(nab(0, 1) == doctest::Approx(2 * u).epsilon(1e-12));
    CHECK(nab(1, 0) == doctest::Approx(2.0 / u).epsilon(1e-12));
  }
}

TEST_CASE("j_pair assembly and preconditions") {
  const MetallicParams mp11 = MetallicParams::make(1, 1);
  const WarpedProductSpec spec = polar_plane();
  {
    const ProductMetallicStructure j = j_pair(
        spec, sigma_field(spec.base()), sigbar_field(spec.fiber()), mp11);
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    const Eigen::MatrixXd Jv = j.assembled.value_at(x, &mp11);
    CHECK(Jv(0, 0) == doctest::Approx(mp11.sigma));
    CHECK(Jv(1, 1) == doctest::Approx(mp11.sigbar));
    CHECK(metallic_residual(Jv, mp11) <= 1e-12);
  }
  {
    // sigma I on both factors assembles to sigma I.
    const ProductMetallicStructure j = j_pair(
        spec, sigma_field(spec.base()), sigma_field(spec.fiber()), mp11);
    Eigen::VectorXd x(2);
    x << 1.2, 0.4;
    CHECK((j.assembled.value_at(x, &mp11) -
           mp11.sigma * Eigen::MatrixXd::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
  }
  // mismatched parameters: a structure metallic for (2,1) fails for (1,1)
  {
    const MetallicParams mp21 = MetallicParams::make(2, 1);
    const LinearOperatorField J2 = LinearOperatorField::constant(
        spec.fiber(), mp21.sigma * Eigen::MatrixXd::Identity(1, 1));
    CHECK_THROWS_AS(j_pair(spec, sigma_field(spec.base()), J2, mp11),
                    DomainError);
  }
  // wrong chart
  CHECK_THROWS_AS(j_pair(spec, sigma_field(spec.fiber()),
                         sigma_field(spec.fiber()), mp11),
                  DomainError);
}

TEST_CASE("metallic map residual") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  const WarpedProductSpec spec = polar_plane();
  {
    // identity map with equal structures
    const CoordinateMap id = CoordinateMap::make(
        spec.base(), spec.base(), {Expression::variable("u")});
    CHECK(metallic_map_residual(id, sigma_field(spec.base()),
                                sigma_field(spec.base()), mp, 5,
                                "test/map-id", 10) <= 1e-14);
  }
  {
    // projection p1 from the product with the pairwise structure
    const CoordinateMap p1 = CoordinateMap::make(
        spec.product(), spec.base(), {Expression::variable("u")});
    const LinearOperatorField pairwise = assemble_pair_field(
        spec, sigma_field(spec.base()), sigbar_field(spec.fiber()));
    CHECK(metallic_map_residual(p1, pairwise, sigma_field(spec.base()), mp, 5,
                                "test/map-p1", 10) <= 1e-14);
    // projection p2 likewise maps onto the fiber structure
    const CoordinateMap p2 = CoordinateMap::make(
        spec.product(), spec.fiber(), {Expression::variable("alpha")});
    CHECK(metallic_map_residual(p2, pairwise, sigbar_field(spec.fiber()), mp,
                                5, "test/map-p2", 10) <= 1e-14);
    // block mismatch: comparing against sigbar I on the base is off by
    // sigma - sigbar
    CHECK(metallic_map_residual(p1, pairwise, sigbar_field(spec.base()), mp,
                                5, "test/map-bad", 10) > 0.1);
  }
}

TEST_CASE("locally metallic conditions") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // sigma I on both factors is parallel for any warp
    const WarpedProductSpec spec = polar_plane();
    const LocallyMetallicResiduals r = locally_metallic_conditions(
        spec, sigma_field(spec.base()), sigma_field(spec.fiber()), mp, 7,
        "test/lm-sigma", 20);
    CHECK(r.condition_a <= 1e-9);
    CHECK(r.condition_b <= 1e-9);
    CHECK(r.direct <= 1e-9);
  }
  {
    // sigma/sigbar mix on a real warp fails, and the oracle agrees
    const WarpedProductSpec spec = polar_plane();
    const LocallyMetallicResiduals r = locally_metallic_conditions(
        spec, sigma_field(spec.base()), sigbar_field(spec.fiber()), mp, 7,
        "test/lm-mix", 20);
    CHECK(r.condition_a > 1e-8);
    CHECK(r.direct > 1e-8);
  }
  {
    // f == 1: everything vanishes for any parallel factor structures
    const WarpedProductSpec spec = sphere_x_line();
    const LocallyMetallicResiduals r = locally_metallic_conditions(
        spec, sigma_field(spec.base()), sigbar_field(spec.fiber()), mp, 7,
        "test/lm-product", 20);
    CHECK(r.condition_a <= 1e-12);
    CHECK(r.condition_b <= 1e-12);
    CHECK(r.direct <= 1e-9);
  }
  {
    // nontrivial pass: J1 = diag(sigma, sigbar) on the base, J2 = sigma I,
    // f = exp(t) so grad f^2 is a sigma-eigenvector of J1.
    const WarpedProductSpec spec = flatwarp(false);
    const LocallyMetallicResiduals r = locally_metallic_conditions(
        spec, diag_sigma_sigbar(spec.base()), sigma_field(spec.fiber()), mp,
        7, "test/lm-aligned", 20);
    CHECK(r.condition_a <= 1e-9);
    CHECK(r.condition_b <= 1e-9);
    CHECK(r.direct <= 1e-9);
  }
  {
    // f = exp(t+s): grad f^2 is no longer an eigenvector; all three move
    const WarpedProductSpec spec = flatwarp(true);
    const LocallyMetallicResiduals r = locally_metallic_conditions(
        spec, diag_sigma_sigbar(spec.base()), sigma_field(spec.fiber()), mp,
        7, "test/lm-skew", 20);
    CHECK(r.condition_a > 1e-8);
    CHECK(r.condition_b > 1e-8);
    CHECK(r.direct > 1e-8);
  }
  {
    // non-parallel factor structure is a distinct failure class
    const WarpedProductSpec spec = polar_plane();
    const LinearOperatorField bad = LinearOperatorField::make(
        spec.base(), {ex("sigma + u")});
    CHECK_THROWS_AS(
        locally_metallic_conditions(spec, bad, sigma_field(spec.fiber()), mp,
                                    7, "test/lm-bad", 5),
        DomainError);
  }
}

TEST_CASE("curvature identities of a locally metallic structure") {
  {
    // flat chart, constant J: R = 0 so everything vanishes
    const MetallicParams mp = MetallicParams::make(2, 1);
    const ChartPtr c = flat2("flat", "x", "y");
    const CurvatureIdentityResiduals r = curvature_identity_residuals(
        diag_sigma_sigbar(c), mp, 11, "test/ci-flat", 10, 8);
    CHECK(r.commute <= 1e-12);
    CHECK(r.swap <= 1e-12);
    CHECK(r.quadratic <= 1e-12);
    CHECK(r.quadratic_literal <= 1e-12);
    CHECK(r.power <= 1e-12);
  }
  {
    // sphere x line with J~+, p = q = 1: literal and corrected agree
    const MetallicParams mp = MetallicParams::make(1, 1);
    const WarpedProductSpec spec = sphere_x_line();
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    const CurvatureIdentityResiduals r = curvature_identity_residuals(
        jp.assembled, mp, 11, "test/ci-golden", 20, 8);
    CHECK(r.commute <= 1e-8);
    CHECK(r.swap <= 1e-8);
    CHECK(r.quadratic <= 1e-8);
    CHECK(r.quadratic_literal <= 1e-8);
    CHECK(r.power <= 1e-8);
  }
  {
    // p = 2, q = 1 separates the coefficient orders
    const MetallicParams mp = MetallicParams::make(2, 1);
    const WarpedProductSpec spec = sphere_x_line();
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    const CurvatureIdentityResiduals r = curvature_identity_residuals(
        jp.assembled, mp, 11, "test/ci-silver", 20, 8);
    CHECK(r.commute <= 1e-8);
    CHECK(r.swap <= 1e-8);
    CHECK(r.quadratic <= 1e-8);
    CHECK(r.power <= 1e-8);
    CHECK(r.quadratic_literal > 0.1);
  }
  {
    // non-parallel structure rejected
    const MetallicParams mp = MetallicParams::make(1, 1);
    const WarpedProductSpec spec = polar_plane();
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    CHECK_THROWS_AS(curvature_identity_residuals(jp.assembled, mp, 11,
                                                 "test/ci-bad", 10, 8),
                    DomainError);
  }
}

TEST_CASE("fiber invariance residuals") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // block-diagonal structures never leak into the base block
    const WarpedProductSpec spec = polar_plane();
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    const FiberInvarianceResiduals r =
        fiber_invariance_residual(spec, jp, 13, "test/fi-polar", 20);
    CHECK(r.vertical_leak == 0.0);
    // Hess(u) = 0 on the flat 1-dim base, so the commutation is trivial
    CHECK(r.hessian_commutation <= 1e-12);
  }
  {
    // sigma I commutes with everything
    const WarpedProductSpec spec = flatwarp(false);
    const ProductMetallicStructure j = j_pair(
        spec, sigma_field(spec.base()), sigma_field(spec.fiber()), mp);
    const FiberInvarianceResiduals r =
        fiber_invariance_residual(spec, j, 13, "test/fi-sigma", 20);
    CHECK(r.vertical_leak <= 1e-12);
    CHECK(r.hessian_commutation <= 1e-9);
  }
  {
    // J~+ on a warp with H^f != 0: the commutation identity needs the
    // locally metallic hypothesis, which fails here, and the residual shows
    const WarpedProductSpec spec = flatwarp(false);
    const ProductMetallicStructure jp = j_pm_product(spec, +1, mp);
    const FiberInvarianceResiduals r =
        fiber_invariance_residual(spec, jp, 13, "test/fi-warp", 20);
    CHECK(r.vertical_leak == 0.0);
    CHECK(r.hessian_commutation > 1e-6);
  }
  {
    // aligned pairwise structure: parallel, so the identity holds with
    // H^f != 0
    const WarpedProductSpec spec = flatwarp(false);
    const ProductMetallicStructure j = j_pair(
        spec, diag_sigma_sigbar(spec.base()), sigma_field(spec.fiber()), mp);
    const FiberInvarianceResiduals r =
        fiber_invariance_residual(spec, j, 13, "test/fi-aligned", 20);
    CHECK(r.vertical_leak <= 1e-12);
    CHECK(r.hessian_commutation <= 1e-8);
  }
}

TEST_CASE("Ricci invariance residuals") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // aligned case: Hessian defect 0 implies Ricci defect 0
    const WarpedProductSpec spec = flatwarp(false);
    const RicciInvarianceResiduals r = ricci_invariance_residuals(
        spec, diag_sigma_sigbar(spec.base()), sigma_field(spec.fiber()), mp,
        17, "test/ri-aligned", 20);
    CHECK(r.factor_precondition <= 1e-8);
    CHECK(r.hessian_defect <= 1e-8);
    CHECK(r.ricci_defect <= 1e-8);
    CHECK(r.vertical_symmetry <= 1e-8);
  }
  {
    // skew warp: both defects move well above tolerance, vertical-pair
    // symmetry holds regardless
    const WarpedProductSpec spec = flatwarp(true);
    const RicciInvarianceResiduals r = ricci_invariance_residuals(
        spec, diag_sigma_sigbar(spec.base()), sigma_field(spec.fiber()), mp,
        17, "test/ri-skew", 20);
    CHECK(r.factor_precondition <= 1e-8);
    CHECK(r.hessian_defect > 1e-7);
    CHECK(r.ricci_defect > 1e-7);
    CHECK(r.vertical_symmetry <= 1e-8);
  }
  {
    // f = 1 with Einstein factors: product Ricci is block diagonal
    const WarpedProductSpec spec =
        WarpedProductSpec::make(sphere2(), hyperbolic2(), ex("1"));
    const RicciInvarianceResiduals r = ricci_invariance_residuals(
        spec, sigma_field(spec.base()), sigbar_field(spec.fiber()), mp, 17,
        "test/ri-einstein", 15);
    CHECK(r.factor_precondition <= 1e-8);
    CHECK(r.hessian_defect <= 1e-12);
    CHECK(r.ricci_defect <= 1e-8);
    CHECK(r.vertical_symmetry <= 1e-8);
  }
}
