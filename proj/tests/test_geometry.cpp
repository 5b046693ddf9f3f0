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

#include "mwp/geometry.hpp"

using namespace mwp;

namespace {

Expression ex(const char* t) { return Expression::parse(t); }

ChartPtr euclidean2() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "euclid2", {"x", "y"}, {{-2.0, 2.0}, {-2.0, 2.0}},
      {ex("1"), ex("0"), ex("0"), ex("1")}));
}

ChartPtr polar() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "polar", {"u", "alpha"}, {{0.5, 2.5}, {0.1, 6.1}},
      {ex("1"), ex("0"), ex("0"), ex("u^2")}));
}

ChartPtr sphere() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "sphere", {"theta", "phi"}, {{0.4, 2.7}, {0.1, 6.1}},
      {ex("1"), ex("0"), ex("0"), ex("sin(theta)^2")}));
}

ChartPtr hyperbolic_plane() {
  return std::make_shared<ChartManifold>(ChartManifold::make(
      "hplane", {"t", "x"}, {{-0.7, 0.7}, {-1.0, 1.0}},
      {ex("1"), ex("0"), ex("0"), ex("exp(2*t)")}));
}

Eigen::VectorXd pt2(double a, double b) {
  Eigen::VectorXd x(2);
  x << a, b;
  return x;
}

Eigen::VectorXd e2(int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("metric_at") {
  CHECK((metric_at(*euclidean2(), pt2(0.3, -0.4), nullptr) -
         Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  const Eigen::MatrixXd gp = metric_at(*polar(), pt2(2.0, 1.0), nullptr);
  CHECK(gp(0, 0) == 1.0);
  CHECK(gp(1, 1) == 4.0);
  CHECK(gp(0, 1) == 0.0);
  CHECK_THROWS_AS(metric_at(*polar(), pt2(3.5, 1.0), nullptr), DomainError);
}

TEST_CASE("chart validation rejects bad metrics") {
  CHECK_THROWS_AS(ChartManifold::make("bad", {"x"}, {{0.0, 1.0}},
                                      {ex("1"), ex("0"), ex("0"), ex("1")}),
                  DomainError);
  CHECK_THROWS_AS(ChartManifold::make("bad", {"x"}, {{0.0, 1.0}}, {ex("y")}),
                  ReferenceError);
  // metric goes indefinite inside the box
  const ChartManifold sig = ChartManifold::make(
      "sig", {"x"}, {{-1.0, 1.0}}, {ex("x")});
  CHECK_THROWS_AS(sig.validate_metric(nullptr), DomainError);
}

TEST_CASE("christoffel closed forms") {
  {
    const Christoffel G = christoffel_at(*euclidean2(), pt2(0.1, 0.2), nullptr);
    double m = 0.0;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(G(k, i, j)));
    CHECK(m == 0.0);
  }
  {
    const double u = 1.7;
    const Christoffel G = christoffel_at(*polar(), pt2(u, 2.0), nullptr);
    CHECK(G(0, 1, 1) == doctest::Approx(-u).epsilon(1e-13));      // Gamma^u_aa
    CHECK(G(1, 0, 1) == doctest::Approx(1.0 / u).epsilon(1e-13)); // Gamma^a_ua
    CHECK(G(1, 1, 0) == doctest::Approx(1.0 / u).epsilon(1e-13));
    CHECK(std::abs(G(0, 0, 0)) < 1e-14);
    CHECK(std::abs(G(0, 0, 1)) < 1e-14);
    CHECK(std::abs(G(1, 1, 1)) < 1e-14);
  }
  {
    const double th = 1.1;
    const Christoffel G = christoffel_at(*sphere(), pt2(th, 2.0), nullptr);
    CHECK(G(0, 1, 1) ==
          doctest::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-12));
  }
}

TEST_CASE("flat charts have zero curvature") {
  for (const ChartPtr& c : {euclidean2(), polar()}) {
    const DomainSampler s = c->sampler(1, "geo/flat");
    for (int k = 0; k < 10; ++k) {
      const auto p = s.point(k);
      const RiemannTensor R =
          riemann_at(*c, Eigen::Map<const Eigen::VectorXd>(p.data(), 2),
                     nullptr);
      CHECK(R.max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("sphere: sectional curvature +1, Ricci = g") {
  const ChartPtr c = sphere();
  const DomainSampler s = c->sampler(2, "geo/sphere");
  for (int k = 0; k < 10; ++k) {
    const auto p = s.point(k);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), 2);
    CHECK(sectional_at(*c, x, e2(0), e2(1), nullptr) ==
          doctest::Approx(1.0).epsilon(1e-9));
    const Eigen::MatrixXd S = ricci_at(*c, x, nullptr);
    const Eigen::MatrixXd g = metric_at(*c, x, nullptr);
    CHECK((S - g).cwiseAbs().maxCoeff() <= 1e-9);
  }
  // lowered tensor at theta: |R(e_th, e_ph, e_th, e_ph)| = sin^2(theta)
  const Eigen::VectorXd x = pt2(1.2, 3.0);
  const PointGeometry pg = geometry_at(*c, x, nullptr);
  CHECK(std::abs(pg.lowered(e2(0), e2(1), e2(0), e2(1))) ==
        doctest::Approx(std::sin(1.2) * std::sin(1.2)).epsilon(1e-10));
}

TEST_CASE("hyperbolic plane: Ricci = -g") {
  const ChartPtr c = hyperbolic_plane();
  const DomainSampler s = c->sampler(3, "geo/hyp");
  for (int k = 0; k < 10; ++k) {
    const auto p = s.point(k);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), 2);
    const Eigen::MatrixXd S = ricci_at(*c, x, nullptr);
    const Eigen::MatrixXd g = metric_at(*c, x, nullptr);
    CHECK((S + g).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("riemann symmetries and first Bianchi") {
  const ChartPtr c = sphere();
  const DomainSampler s = c->sampler(4, "geo/symm");
  for (int k = 0; k < 8; ++k) {
    const auto p = s.point(k);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), 2);
    const PointGeometry pg = geometry_at(*c, x, nullptr);
    const CounterRng rng(11, "geo/symm/vec");
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd X(2), Y(2), Z(2), W(2);
      for (int i = 0; i < 2; ++i) {
        X(i) = rng.symmetric(k, t, i);
        Y(i) = rng.symmetric(k, t, 10 + i);
        Z(i) = rng.symmetric(k, t, 20 + i);
        W(i) = rng.symmetric(k, t, 30 + i);
      }
      // antisymmetry in (X, Y): exact on components, roundoff-only after
      // contraction (different summation order)
      for (int l = 0; l < 2; ++l)
        for (int kk = 0; kk < 2; ++kk)
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              CHECK(pg.riemann(l, kk, i, j) == -pg.riemann(l, kk, j, i));
      CHECK((pg.riemann.apply(X, Y, Z) + pg.riemann.apply(Y, X, Z))
                .cwiseAbs()
                .maxCoeff() <= 1e-14);
      // first Bianchi
      CHECK((pg.riemann.apply(X, Y, Z) + pg.riemann.apply(Y, Z, X) +
             pg.riemann.apply(Z, X, Y))
                .cwiseAbs()
                .maxCoeff() <= 1e-9);
      // pair symmetry of the lowered tensor
      CHECK(pg.lowered(X, Y, Z, W) ==
            doctest::Approx(pg.lowered(Z, W, X, Y)).epsilon(1e-9));
      // Ricci symmetry
      CHECK((pg.ricci - pg.ricci.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("nabla g = 0 at 50 samples per chart") {
  for (const ChartPtr& c : {euclidean2(), polar(), sphere(),
                            hyperbolic_plane()}) {
    const DomainSampler s = c->sampler(5, "geo/nablag");
    for (int k = 0; k < 50; ++k) {
      const auto p = s.point(k);
      CHECK(nabla_metric_residual_at(
                *c, Eigen::Map<const Eigen::VectorXd>(p.data(), 2), nullptr) <=
            1e-9);
    }
  }
}

TEST_CASE("gradient, Hessian, Laplacian closed forms") {
  {
    // phi = u on the Euclidean line.
    const ChartPtr line = std::make_shared<ChartManifold>(
        ChartManifold::make("line", {"u"}, {{-1.0, 4.0}}, {ex("1")}));
    Eigen::VectorXd x(1);
    x << 2.0;
    CHECK(gradient_at(*line, ex("u"), x, nullptr)(0) == 1.0);
    CHECK(grad_norm_sq_at(*line, ex("u"), x, nullptr) == 1.0);
    CHECK(hessian_at(*line, ex("u^2"), x, nullptr)(0, 0) == 2.0);
    CHECK(laplacian_at(*line, ex("u^2"), x, nullptr) == 2.0);
    CHECK(gradient_at(*line, ex("3.5"), x, nullptr).cwiseAbs().maxCoeff() ==
          0.0);
  }
  {
    // base factor of the example gallery: g = n du^2 with n = 2.
    const ChartPtr base = std::make_shared<ChartManifold>(
        ChartManifold::make("base", {"u"}, {{0.5, 2.5}}, {ex("2")}));
    Eigen::VectorXd x(1);
    x << 1.3;
    CHECK(gradient_at(*base, ex("u"), x, nullptr)(0) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(grad_norm_sq_at(*base, ex("u"), x, nullptr) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
  {
    // phi = u on the polar chart: Hess(u)_aa = u, Laplacian = 1/u.
    const double u = 1.6;
    const Eigen::VectorXd x = pt2(u, 2.2);
    const Eigen::MatrixXd H = hessian_at(*polar(), ex("u"), x, nullptr);
    CHECK(H(0, 0) == doctest::Approx(0.0));
    CHECK(H(1, 1) == doctest::Approx(u).epsilon(1e-12));
    CHECK(laplacian_at(*polar(), ex("u"), x, nullptr) ==
          doctest::Approx(1.0 / u).epsilon(1e-12));
    // linear phi on a Euclidean chart has vanishing Hessian
    CHECK(hessian_at(*euclidean2(), ex("2*x - 3*y"), pt2(0.4, 0.1), nullptr)
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("covariant derivative of a field") {
  // nabla_{e_u} (u^2 e_u) on the Euclidean line: d_u (u^2) = 2u.
  const ChartPtr line = std::make_shared<ChartManifold>(
      ChartManifold::make("line", {"u"}, {{0.5, 3.0}}, {ex("1")}));
  Eigen::VectorXd x(1), X(1);
  x << 1.5;
  X << 1.0;
  CHECK(covariant_derivative_at(*line, {ex("u^2")}, x, X, nullptr)(0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  // polar chart: nabla_{e_alpha} e_alpha = -u e_u.
  const Eigen::VectorXd p = pt2(1.4, 1.0);
  Eigen::VectorXd A(2);
  A << 0.0, 1.0;
  const Eigen::VectorXd cd =
      covariant_derivative_at(*polar(), {ex("0"), ex("1")}, p, A, nullptr);
  CHECK(cd(0) == doctest::Approx(-1.4).epsilon(1e-13));
  CHECK(std::abs(cd(1)) <= 1e-13);
}

TEST_CASE("christoffel jets match finite differences of the metric") {
  const ChartPtr c = sphere();
  const double h = 1e-4;
  const DomainSampler s = c->sampler(6, "geo/fd");
  for (int k = 0; k < 5; ++k) {
    const auto p = s.point(k);
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), 2);
    const Christoffel G = christoffel_at(*c, x, nullptr);

    // FD Christoffel from central differences of metric_at.
    const Eigen::Index d = 2;
    std::vector<Eigen::MatrixXd> dg(2);
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      dg[static_cast<std::size_t>(i)] =
          (metric_at(*c, xp, nullptr) - metric_at(*c, xm, nullptr)) / (2 * h);
    }
    const Eigen::MatrixXd ginv = metric_at(*c, x, nullptr).inverse();
    for (Eigen::Index kk = 0; kk < d; ++kk)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          double acc = 0.0;
          for (Eigen::Index l = 0; l < d; ++l)
            acc += 0.5 * ginv(kk, l) *
                   (dg[static_cast<std::size_t>(i)](j, l) +
                    dg[static_cast<std::size_t>(j)](i, l) -
                    dg[static_cast<std::size_t>(l)](i, j));
          CHECK(std::abs(G(kk, i, j) - acc) /
                    std::max(1.0, std::abs(G(kk, i, j))) <=
                1e-5);
        }
  }
}

TEST_CASE("coordinate invariance: plane is flat in both charts") {
  for (const ChartPtr& c : {euclidean2(), polar()}) {
    const DomainSampler s = c->sampler(7, "geo/coordinv");
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const auto p = s.point(k);
      worst = std::max(
          worst, riemann_at(*c, Eigen::Map<const Eigen::VectorXd>(p.data(), 2),
                            nullptr)
                     .max_abs());
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("nabla_operator_residual") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // constant operator on a Euclidean chart is parallel
    const ChartPtr c = euclidean2();
    Eigen::MatrixXd Jv(2, 2);
    Jv << mp.sigma, 0, 0, mp.sigbar;
    const LinearOperatorField J = LinearOperatorField::constant(c, Jv);
    CHECK(nabla_operator_residual(J, &mp, 1, "geo/nabla1", 10) == 0.0);
  }
  {
    // coordinate-dependent entry on a flat chart: residual = max |dJ|
    const ChartPtr c = euclidean2();
    const LinearOperatorField J = LinearOperatorField::make(
        c, {ex("x"), ex("0"), ex("0"), ex("1")});
    const double r = nabla_operator_residual(J, &mp, 1, "geo/nabla2", 10);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    // sigma I is parallel on any chart
    const ChartPtr c = sphere();
    const LinearOperatorField J = LinearOperatorField::constant(
        c, mp.sigma * Eigen::MatrixXd::Identity(2, 2));
    CHECK(nabla_operator_residual(J, &mp, 1, "geo/nabla3", 10) <= 1e-12);
  }
}
