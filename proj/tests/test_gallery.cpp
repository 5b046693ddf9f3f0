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

#include "mwp/gallery.hpp"

using namespace mwp;

namespace {

ExampleConfig random_cfg(const CounterRng& rng, std::uint64_t id, int n, int k,
                         const MetallicParams& mp) {
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    alpha[static_cast<std::size_t>(i)] =
        rng.uniform(0.05, 1.52, id, 10 + static_cast<std::uint64_t>(i));
  return ExampleConfig::make(n, k, mp, rng.uniform(0.3, 3.0, id, 1), alpha);
}

}  // namespace

TEST_CASE("frame components and Gram matrix") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // n = 2, u = 1, alpha = (0, 0)
    const ExampleConfig cfg = ExampleConfig::make(2, 1, mp, 1.0, {0.0, 0.0});
    const auto frame = frame_at(cfg);
    REQUIRE(frame.size() == 3);
    Eigen::VectorXd z0(4), z1(4), z2(4);
    z0 << 1, 0, 1, 0;
    z1 << 0, 1, 0, 0;
    z2 << 0, 0, 0, 1;
    CHECK((frame[0] - z0).cwiseAbs().maxCoeff() == 0.0);
    CHECK((frame[1] - z1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((frame[2] - z2).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
    expected.diagonal() << 2, 1, 1;
    CHECK((frame_gram(cfg) - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
  {
    // n = 3, u = 2: Gram = diag(3, 4, 4, 4)
    const ExampleConfig cfg =
        ExampleConfig::make(3, 2, mp, 2.0, {0.3, 0.9, 1.2});
    const Eigen::MatrixXd gram = frame_gram(cfg);
    Eigen::VectorXd expected(4);
    expected << 3, 4, 4, 4;
    CHECK((gram - Eigen::MatrixXd(expected.asDiagonal()))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
}

TEST_CASE("frame Gram structure for 100 random configurations") {
  const CounterRng rng(61, "gallery/gram");
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng.u01(t, 0) * 5);  // 1..5
    const int k = static_cast<int>(rng.u01(t, 1) * (n + 1));
    const MetallicParams mp = MetallicParams::make(
        1 + static_cast<int>(rng.u01(t, 2) * 5),
        1 + static_cast<int>(rng.u01(t, 3) * 5));
    const ExampleConfig cfg = random_cfg(rng, 1000 + t, n, std::min(k, n), mp);
    const Eigen::MatrixXd gram = frame_gram(cfg);
    CHECK(std::abs(gram(0, 0) - n) <= 1e-12);
    for (int i = 1; i <= n; ++i) {
      CHECK(std::abs(gram(i, i) - cfg.u * cfg.u) <= 1e-12);
      CHECK(std::abs(gram(0, i)) <= 1e-12);
      for (int j = i + 1; j <= n; ++j) CHECK(std::abs(gram(i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("ambient structure") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  {
    // k = n degenerates to sigma * identity
    Eigen::VectorXd v(4);
    v << 1, 2, 3, 4;
    CHECK((ambient_j_apply(v, 2, mp) - mp.sigma * v).cwiseAbs().maxCoeff() ==
          0.0);
  }
  {
    // eigenvector relations J Z_i = sigma Z_i (i <= k), sigbar beyond
    const ExampleConfig cfg =
        ExampleConfig::make(3, 2, mp, 1.3, {0.4, 0.8, 1.1});
    const auto frame = frame_at(cfg);
    for (int i = 1; i <= 3; ++i) {
      const double lam = i <= 2 ? mp.sigma : mp.sigbar;
      CHECK((ambient_j_apply(frame[static_cast<std::size_t>(i)], 2, mp) -
             lam * frame[static_cast<std::size_t>(i)])
                .cwiseAbs()
                .maxCoeff() <= 1e-15);
    }
  }
  // metallic residual of the matrix for all p,q in 1..5
  for (int p = 1; p <= 5; ++p)
    for (int q = 1; q <= 5; ++q) {
      const MetallicParams pq = MetallicParams::make(p, q);
      CHECK(metallic_residual(ambient_j_matrix(3, 2, pq), pq) <= 1e-12);
      // scalar-product compatibility: diagonal J is symmetric
      const CompatibilityResidual cr = compatibility_residual(
          ambient_j_matrix(3, 2, pq), Eigen::MatrixXd::Identity(6, 6), pq);
      CHECK(cr.max() <= 1e-12);
    }
  // the printed sigbar = 1 - sigma only works at p = 1
  {
    const MetallicParams p1 = MetallicParams::make(1, 3);
    CHECK(metallic_residual(ambient_j_matrix_sigbar_one_minus(3, 2, p1), p1) <=
          1e-12);
    for (int p = 2; p <= 5; ++p) {
      const MetallicParams pq = MetallicParams::make(p, 1);
      CHECK(metallic_residual(ambient_j_matrix_sigbar_one_minus(3, 2, pq),
                              pq) > 0.1);
    }
  }
  CHECK_THROWS_AS(ambient_j_matrix(3, 7, mp), DomainError);
}

TEST_CASE("slant cosine") {
  const MetallicParams mp = MetallicParams::make(1, 1);
  // k = n: J Z_0 parallel to Z_0
  CHECK(slant_cosine(3, 3, mp) == doctest::Approx(1.0).epsilon(1e-14));
  // k = 0: sigbar < 0 flips the orientation
  CHECK(slant_cosine(3, 0, mp) == doctest::Approx(-1.0).epsilon(1e-14));
  // n = 2, k = 1, golden: 1/sqrt(6)
  CHECK(slant_cosine(2, 1, mp) ==
        doctest::Approx(0.40824829046386302).epsilon(1e-12));

  // matches the direct inner-product computation, is independent of u and
  // alpha, and satisfies |cos| <= 1 with equality only at k in {0, n}
  const CounterRng rng(67, "gallery/slant");
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng.u01(t, 0) * 4);
    const int k = static_cast<int>(rng.u01(t, 1) * (n + 1));
    const MetallicParams pq = MetallicParams::make(
        1 + static_cast<int>(rng.u01(t, 2) * 5),
        1 + static_cast<int>(rng.u01(t, 3) * 5));
    const double c = slant_cosine(n, std::min(k, n), pq);
    CHECK(std::abs(c) <= 1.0 + 1e-15);
    if (k > 0 && k < n) CHECK(std::abs(c) < 1.0 - 1e-6);

    const ExampleConfig cfg = random_cfg(rng, 3000 + t, n, std::min(k, n), pq);
    CHECK(std::abs(slant_cosine_direct(cfg) - c) <= 1e-12);
    CHECK(jz0_span_orthogonality(cfg) <= 1e-12);
  }
}

TEST_CASE("pullback of the ambient metric is the warped metric") {
  const CounterRng rng(71, "gallery/pullback");
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + static_cast<int>(rng.u01(t, 0) * 4);
    const MetallicParams mp = MetallicParams::make(1, 1);
    const ExampleConfig cfg = random_cfg(rng, 500 + t, n, n >= 1 ? 1 : 0, mp);
    const Eigen::MatrixXd pb = pullback_metric(cfg);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(n + 1, n + 1);
    expected(0, 0) = static_cast<double>(n);
    for (int i = 1; i <= n; ++i) expected(i, i) = cfg.u * cfg.u;
    CHECK((pb - expected).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("example warped spec") {
  {
    // n = 1 is the flat polar plane
    const WarpedProductSpec spec = example_warped_spec(1);
    const DomainSampler s = spec.product()->sampler(3, "gallery/flat");
    for (int k = 0; k < 10; ++k) {
      const auto p = s.point(static_cast<std::size_t>(k));
      const RiemannTensor R = riemann_at(
          *spec.product(), Eigen::Map<const Eigen::VectorXd>(p.data(), 2),
          nullptr);
      CHECK(R.max_abs() <= 1e-9);
    }
  }
  {
    // n = 2: product metric matches the frame Gram at matching points
    const WarpedProductSpec spec = example_warped_spec(2);
    const MetallicParams mp = MetallicParams::make(1, 1);
    const ExampleConfig cfg = ExampleConfig::make(2, 1, mp, 1.0, {0.3, 0.7});
    Eigen::VectorXd x(3);
    x << cfg.u, cfg.alpha[0], cfg.alpha[1];
    const Eigen::MatrixXd g = metric_at(*spec.product(), x, nullptr);
    CHECK((g - frame_gram(cfg)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
