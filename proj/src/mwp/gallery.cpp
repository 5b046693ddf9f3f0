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

#include "mwp/gallery.hpp"

#include <cmath>
#include <string>

namespace mwp {

ExampleConfig ExampleConfig::make(int n, int k, MetallicParams params,
                                  double u, std::vector<double> alpha) {
  if (n < 1) throw DomainError("example needs n >= 1 angle coordinates");
  if (k < 0 || k > n) throw DomainError("split index k must be in 0..n");
  if (!(u > 0.0)) throw DomainError("example requires u > 0");
  if (alpha.size() != static_cast<std::size_t>(n))
    throw DomainError("example needs exactly n angles");
  ExampleConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.params = params;
  cfg.u = u;
  cfg.alpha = std::move(alpha);
  return cfg;
}

std::vector<Eigen::VectorXd> frame_at(const ExampleConfig& cfg) {
  const int n = cfg.n;
  std::vector<Eigen::VectorXd> frame;
  frame.reserve(static_cast<std::size_t>(n + 1));

  Eigen::VectorXd z0 = Eigen::VectorXd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    z0(2 * i) = std::cos(cfg.alpha[static_cast<std::size_t>(i)]);
    z0(2 * i + 1) = std::sin(cfg.alpha[static_cast<std::size_t>(i)]);
  }
  frame.push_back(std::move(z0));

  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd zi = Eigen::VectorXd::Zero(2 * n);
    zi(2 * i) = -cfg.u * std::sin(cfg.alpha[static_cast<std::size_t>(i)]);
    zi(2 * i + 1) = cfg.u * std::cos(cfg.alpha[static_cast<std::size_t>(i)]);
    frame.push_back(std::move(zi));
  }
  return frame;
}

Eigen::MatrixXd frame_gram(const ExampleConfig& cfg) {
  const std::vector<Eigen::VectorXd> frame = frame_at(cfg);
  const int n = cfg.n;
  Eigen::MatrixXd gram(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      gram(i, j) = frame[static_cast<std::size_t>(i)].dot(
          frame[static_cast<std::size_t>(j)]);
  return gram;
}

Eigen::VectorXd ambient_j_apply(const Eigen::VectorXd& v, int k,
                                const MetallicParams& params) {
  if (v.size() % 2 != 0)
    throw DomainError("ambient structure acts on R^{2n}");
  const int n = static_cast<int>(v.size() / 2);
  if (k < 0 || k > n) throw DomainError("split index k must be in 0..n");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = (i < 2 * k ? params.sigma : params.sigbar) * v(i);
  return out;
}

Eigen::MatrixXd ambient_j_matrix(int n, int k, const MetallicParams& params) {
  if (n < 1 || k < 0 || k > n)
    throw DomainError("split index k must be in 0..n");
  Eigen::VectorXd diag(2 * n);
  for (int i = 0; i < 2 * n; ++i)
    diag(i) = (i < 2 * k ? params.sigma : params.sigbar);
  return diag.asDiagonal();
}

Eigen::MatrixXd ambient_j_matrix_sigbar_one_minus(
    int n, int k, const MetallicParams& params) {
  if (n < 1 || k < 0 || k > n)
    throw DomainError("split index k must be in 0..n");
  Eigen::VectorXd diag(2 * n);
  for (int i = 0; i < 2 * n; ++i)
    diag(i) = (i < 2 * k ? params.sigma : 1.0 - params.sigma);
  return diag.asDiagonal();
}

double slant_cosine(int n, int k, const MetallicParams& params) {
  if (n < 1 || k < 0 || k > n)
    throw DomainError("split index k must be in 0..n");
  const double s = params.sigma;
  const double sb = params.sigbar;
  const double num = k * s + (n - k) * sb;
  const double den = std::sqrt(n * (k * s * s + (n - k) * sb * sb));
  return num / den;
}

double slant_cosine_direct(const ExampleConfig& cfg) {
  const std::vector<Eigen::VectorXd> frame = frame_at(cfg);
  const Eigen::VectorXd jz0 = ambient_j_apply(frame[0], cfg.k, cfg.params);
  return jz0.dot(frame[0]) / (jz0.norm() * frame[0].norm());
}

double jz0_span_orthogonality(const ExampleConfig& cfg) {
  const std::vector<Eigen::VectorXd> frame = frame_at(cfg);
  const Eigen::VectorXd jz0 = ambient_j_apply(frame[0], cfg.k, cfg.params);
  double res = 0.0;
  for (int i = 1; i <= cfg.n; ++i)
    res = std::max(res,
                   std::abs(jz0.dot(frame[static_cast<std::size_t>(i)])));
  return res;
}

std::vector<Expression> immersion_components(int n) {
  if (n < 1) throw DomainError("immersion needs n >= 1");
  std::vector<Expression> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    const std::string a = "a" + std::to_string(i);
    out.push_back(Expression::parse("u*cos(" + a + ")"));
    out.push_back(Expression::parse("u*sin(" + a + ")"));
  }
  return out;
}

Eigen::MatrixXd pullback_metric(const ExampleConfig& cfg) {
  const int n = cfg.n;
  std::vector<std::string> names;
  std::vector<double> values;
  names.reserve(static_cast<std::size_t>(n + 1));
  names.push_back("u");
  values.push_back(cfg.u);
  for (int i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    values.push_back(cfg.alpha[static_cast<std::size_t>(i - 1)]);
  }
  const EvalEnv env(names, values, &cfg.params);

  // Jacobian rows: d psi^A / d x^i for the n+1 chart coordinates.
  const std::vector<Expression> psi = immersion_components(n);
  Eigen::MatrixXd jac(2 * n, n + 1);
  for (int a = 0; a < 2 * n; ++a) {
    const Jet2 j = psi[static_cast<std::size_t>(a)].eval_jet2(env);
    for (int i = 0; i <= n; ++i) jac(a, i) = j.grad()(i);
  }
  return jac.transpose() * jac;
}

WarpedProductSpec example_warped_spec(int n) {
  if (n < 1) throw DomainError("example needs n >= 1");
  auto base = std::make_shared<ChartManifold>(ChartManifold::make(
      "ray", {"u"}, {{0.5, 2.5}},
      {Expression::number(static_cast<double>(n))}));
  std::vector<std::string> coords;
  std::vector<Interval> domain;
  std::vector<Expression> metric(
      static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
      Expression::number(0.0));
  for (int i = 1; i <= n; ++i) {
    coords.push_back("a" + std::to_string(i));
    // inside [0, pi/2] with the chart-interior margin
    domain.push_back({0.1, 1.4708});
    metric[static_cast<std::size_t>((i - 1) * n + (i - 1))] =
        Expression::number(1.0);
  }
  auto fiber = std::make_shared<ChartManifold>(ChartManifold::make(
      "angles", std::move(coords), std::move(domain), std::move(metric)));
  return WarpedProductSpec::make(std::move(base), std::move(fiber),
                                 Expression::variable("u"));
}

}  // namespace mwp
