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

#include "mwp/product_structures.hpp"

#include <cmath>
#include <string>

namespace mwp {

namespace {

constexpr double kStructureTol = 1e-10;
constexpr double kParallelTol = 1e-9;

Eigen::VectorXd map_point(const DomainSampler& s, std::size_t k,
                          Eigen::Index d) {
  const std::vector<double> p = s.point(k);
  return Eigen::Map<const Eigen::VectorXd>(p.data(), d);
}

Eigen::VectorXd rand_vec(const CounterRng& rng, std::uint64_t a,
                         std::uint64_t b, Eigen::Index d) {
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i)
    v(i) = rng.symmetric(a, b, static_cast<std::uint64_t>(i));
  return v;
}

// Theorems 2.6/2.8 content for the constructed structures: metallic and
// compatible with the warped metric wherever we sample.
void verify_structure(const ProductMetallicStructure& s,
                      const WarpedProductSpec& spec) {
  const DomainSampler sampler =
      spec.product()->sampler(0, "structure-verify");
  for (int k = 0; k < 8; ++k) {
    const Eigen::VectorXd x =
        map_point(sampler, static_cast<std::size_t>(k), spec.dim());
    const Eigen::MatrixXd J = s.assembled.value_at(x, &s.params);
    const double mr = metallic_residual(J, s.params);
    if (mr > kStructureTol)
      throw DomainError("assembled structure is not metallic (residual " +
                        std::to_string(mr) + ")");
    const Eigen::MatrixXd g = metric_at(*spec.product(), x, &s.params);
    const CompatibilityResidual cr = compatibility_residual(J, g, s.params);
    if (cr.max() > kStructureTol)
      throw DomainError(
          "assembled structure is not compatible with the warped metric "
          "(residual " +
          std::to_string(cr.max()) + ")");
  }
}

void require_factor_structure(const LinearOperatorField& J,
                              const ChartPtr& chart, const char* which,
                              const MetallicParams& params) {
  if (J.chart()->name() != chart->name() || J.dim() != chart->dim())
    throw DomainError(std::string(which) +
                      " factor structure lives on the wrong chart");
  const DomainSampler s = chart->sampler(0, std::string("factor-verify/") +
                                                which);
  for (int k = 0; k < 8; ++k) {
    const Eigen::VectorXd x =
        map_point(s, static_cast<std::size_t>(k), chart->dim());
    const Eigen::MatrixXd Jv = J.value_at(x, &params);
    if (metallic_residual(Jv, params) > kStructureTol)
      throw DomainError(std::string(which) +
                        " factor structure is not metallic for p=" +
                        std::to_string(params.p) +
                        ", q=" + std::to_string(params.q));
    const Eigen::MatrixXd g = metric_at(*chart, x, &params);
    if (compatibility_residual(Jv, g, params).max() > kStructureTol)
      throw DomainError(std::string(which) +
                        " factor structure is not compatible with its metric");
  }
}

}  // namespace

LinearOperatorField product_structure_F(const WarpedProductSpec& spec) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(spec.dim(), spec.dim());
  F.topLeftCorner(spec.n(), spec.n()) =
      Eigen::MatrixXd::Identity(spec.n(), spec.n());
  F.bottomRightCorner(spec.m(), spec.m()) =
      -Eigen::MatrixXd::Identity(spec.m(), spec.m());
  return LinearOperatorField::constant(spec.product(), F);
}

ProductMetallicStructure j_pm_product(const WarpedProductSpec& spec, int sign,
                                      const MetallicParams& params) {
  // diag(sigma I_n, sigbar I_m) for +, swapped for -; entries kept symbolic
  // so the same field serves any (p, q) at evaluation time.
  const Expression zero = Expression::number(0.0);
  const Expression s_base =
      Expression::symbol(sign >= 0 ? Sym::Sigma : Sym::Sigbar);
  const Expression s_fiber =
      Expression::symbol(sign >= 0 ? Sym::Sigbar : Sym::Sigma);
  const Eigen::Index d = spec.dim();
  std::vector<Expression> entries(static_cast<std::size_t>(d * d), zero);
  for (Eigen::Index i = 0; i < spec.n(); ++i)
    entries[static_cast<std::size_t>(i * d + i)] = s_base;
  for (Eigen::Index i = spec.n(); i < d; ++i)
    entries[static_cast<std::size_t>(i * d + i)] = s_fiber;

  ProductMetallicStructure out{
      sign >= 0 ? ProductMetallicStructure::Variant::ProjectorPlus
                : ProductMetallicStructure::Variant::ProjectorMinus,
      params, LinearOperatorField::make(spec.product(), std::move(entries))};
  verify_structure(out, spec);
  return out;
}

LinearOperatorField assemble_pair_field(const WarpedProductSpec& spec,
                                        const LinearOperatorField& J1,
                                        const LinearOperatorField& J2) {
  const Eigen::Index n = spec.n();
  const Eigen::Index m = spec.m();
  const Eigen::Index d = n + m;
  const Expression zero = Expression::number(0.0);
  std::vector<Expression> entries(static_cast<std::size_t>(d * d), zero);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      entries[static_cast<std::size_t>(i * d + j)] = J1.entry(i, j);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      entries[static_cast<std::size_t>((n + a) * d + (n + b))] =
          J2.entry(a, b);
  return LinearOperatorField::make(spec.product(), std::move(entries));
}

ProductMetallicStructure j_pair(const WarpedProductSpec& spec,
                                const LinearOperatorField& J1,
                                const LinearOperatorField& J2,
                                const MetallicParams& params) {
  require_factor_structure(J1, spec.base(), "base", params);
  require_factor_structure(J2, spec.fiber(), "fiber", params);
  ProductMetallicStructure out{ProductMetallicStructure::Variant::Pairwise,
                               params, assemble_pair_field(spec, J1, J2)};
  verify_structure(out, spec);
  return out;
}

CoordinateMap CoordinateMap::make(ChartPtr source, ChartPtr target,
                                  std::vector<Expression> components) {
  if (!source || !target) throw DomainError("coordinate map requires charts");
  if (components.size() != static_cast<std::size_t>(target->dim()))
    throw DomainError("coordinate map needs one component per target coordinate");
  std::set<std::string> allowed(source->coords().begin(),
                                source->coords().end());
  for (const auto& e : components)
    for (const auto& v : e.free_vars())
      if (!allowed.count(v))
        throw ReferenceError("map component `" + e.str() +
                             "` uses unknown coordinate '" + v + "'");
  CoordinateMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.components_ = std::move(components);
  return m;
}

Eigen::VectorXd CoordinateMap::apply(const Eigen::VectorXd& x,
                                     const MetallicParams* params) const {
  const EvalEnv env = source_->env(x, params);
  Eigen::VectorXd y(target_->dim());
  for (Eigen::Index i = 0; i < target_->dim(); ++i)
    y(i) = components_[static_cast<std::size_t>(i)].eval(env);
  return y;
}

Eigen::MatrixXd CoordinateMap::jacobian(const Eigen::VectorXd& x,
                                        const MetallicParams* params) const {
  const EvalEnv env = source_->env(x, params);
  Eigen::MatrixXd D(target_->dim(), source_->dim());
  for (Eigen::Index i = 0; i < target_->dim(); ++i) {
    const Jet2 j = components_[static_cast<std::size_t>(i)].eval_jet2(env);
    for (Eigen::Index k = 0; k < source_->dim(); ++k) D(i, k) = j.grad()(k);
  }
  return D;
}

double metallic_map_residual(const CoordinateMap& phi,
                             const LinearOperatorField& J1,
                             const LinearOperatorField& J2,
                             const MetallicParams& params, std::uint64_t seed,
                             const std::string& check_id, int samples) {
  if (J1.dim() != phi.source()->dim() || J2.dim() != phi.target()->dim())
    throw DomainError("metallic map residual: operator dimensions mismatch");
  const DomainSampler s = phi.source()->sampler(seed, check_id);
  double res = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd x =
        map_point(s, static_cast<std::size_t>(k), phi.source()->dim());
    const Eigen::MatrixXd D = phi.jacobian(x, &params);
    const Eigen::MatrixXd lhs = D * J1.value_at(x, &params);
    const Eigen::MatrixXd rhs =
        J2.value_at(phi.apply(x, &params), &params) * D;
    res = std::max(res, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return res;
}

LocallyMetallicResiduals locally_metallic_conditions(
    const WarpedProductSpec& spec, const LinearOperatorField& J1,
    const LinearOperatorField& J2, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples) {
  const double p1 = nabla_operator_residual(J1, &params, seed,
                                            check_id + "/pre1", samples);
  if (p1 > kParallelTol)
    throw DomainError("J1 is not parallel on the base (residual " +
                      std::to_string(p1) + ")");
  const double p2 = nabla_operator_residual(J2, &params, seed,
                                            check_id + "/pre2", samples);
  if (p2 > kParallelTol)
    throw DomainError("J2 is not parallel on the fiber (residual " +
                      std::to_string(p2) + ")");

  const Expression f2 =
      Expression::pow(spec.warp(), Expression::number(2));
  const DomainSampler s = spec.product()->sampler(seed, check_id);
  const CounterRng rng(seed, check_id + "/vectors");

  LocallyMetallicResiduals out;
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd x =
        map_point(s, static_cast<std::size_t>(k), spec.dim());
    const Eigen::VectorXd xb = spec.base_part(x);
    const Eigen::VectorXd xf = spec.fiber_part(x);

    const Jet2 f2jet = f2.eval_jet2(spec.base()->env(xb, &params));
    const Eigen::VectorXd grad_f2 =
        gradient_at(*spec.base(), f2, xb, &params);
    const Eigen::MatrixXd J1v = J1.value_at(xb, &params);
    const Eigen::MatrixXd J2v = J2.value_at(xf, &params);
    const Eigen::MatrixXd g2 = metric_at(*spec.fiber(), xf, &params);

    const Eigen::VectorXd X = rand_vec(rng, k, 0, spec.n());
    const Eigen::VectorXd V = rand_vec(rng, k, 1, spec.m());
    const Eigen::VectorXd X2 = rand_vec(rng, k, 2, spec.m());
    const Eigen::VectorXd Y2 = rand_vec(rng, k, 3, spec.m());

    // (a) df^2(J1 X) V = df^2(X) J2 V, componentwise on the fiber factor.
    const double df2_J1X = f2jet.grad().dot(J1v * X);
    const double df2_X = f2jet.grad().dot(X);
    out.condition_a =
        std::max(out.condition_a,
                 (df2_J1X * V - df2_X * (J2v * V)).cwiseAbs().maxCoeff());

    // (b) g2(X2, J2 Y2) grad f^2 = g2(X2, Y2) J1(grad f^2) on the base.
    const double g2_J2 = X2.dot(g2 * (J2v * Y2));
    const double g2_id = X2.dot(g2 * Y2);
    out.condition_b =
        std::max(out.condition_b, (g2_J2 * grad_f2 - g2_id * (J1v * grad_f2))
                                      .cwiseAbs()
                                      .maxCoeff());
  }

  const LinearOperatorField assembled = assemble_pair_field(spec, J1, J2);
  out.direct = nabla_operator_residual(assembled, &params, seed,
                                       check_id + "/direct", samples);
  return out;
}

CurvatureIdentityResiduals curvature_identity_residuals(
    const LinearOperatorField& J, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples, int n_max) {
  const double pre = nabla_operator_residual(J, &params, seed,
                                             check_id + "/pre", samples);
  if (pre > kParallelTol)
    throw DomainError("structure is not parallel (residual " +
                      std::to_string(pre) + "); identities need nabla J = 0");
  if (n_max < 1 || n_max > 12)
    throw DomainError("power identity range must be 1..12");

  const ChartManifold& chart = *J.chart();
  const Eigen::Index d = chart.dim();
  const DomainSampler s = chart.sampler(seed, check_id);
  const CounterRng rng(seed, check_id + "/vectors");

  CurvatureIdentityResiduals out;
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd x = map_point(s, static_cast<std::size_t>(k), d);
    const PointGeometry pg = geometry_at(chart, x, &params);
    const Eigen::MatrixXd Jv = J.value_at(x, &params);
    const Eigen::VectorXd X = rand_vec(rng, k, 0, d);
    const Eigen::VectorXd Y = rand_vec(rng, k, 1, d);
    const Eigen::VectorXd Z = rand_vec(rng, k, 2, d);

    const Eigen::VectorXd RXYZ = pg.riemann.apply(X, Y, Z);
    const Eigen::VectorXd RJXY = pg.riemann.apply(Jv * X, Y, Z);

    out.commute = std::max(
        out.commute, (pg.riemann.apply(X, Y, Jv * Z) - Jv * RXYZ)
                         .cwiseAbs()
                         .maxCoeff());
    out.swap = std::max(out.swap, (RJXY - pg.riemann.apply(X, Jv * Y, Z))
                                      .cwiseAbs()
                                      .maxCoeff());

    const Eigen::VectorXd RJJ = pg.riemann.apply(Jv * X, Jv * Y, Z);
    out.quadratic =
        std::max(out.quadratic,
                 (RJJ - params.p * RJXY - params.q * RXYZ).cwiseAbs()
                     .maxCoeff());
    out.quadratic_literal =
        std::max(out.quadratic_literal,
                 (RJJ - params.q * RJXY - params.p * RXYZ).cwiseAbs()
                     .maxCoeff());

    Eigen::VectorXd JnX = Jv * X;  // J^{n} X, starting at n = 1
    for (int n = 1; n <= n_max; ++n) {
      JnX = Jv * JnX;  // J^{n+1} X
      const double gn =
          static_cast<double>(fibonacci(params.p, params.q, n));
      const double gn1 =
          static_cast<double>(fibonacci(params.p, params.q, n + 1));
      out.power = std::max(
          out.power, (pg.riemann.apply(JnX, Y, Z) - gn1 * RJXY -
                      params.q * gn * RXYZ)
                         .cwiseAbs()
                         .maxCoeff());
    }
  }
  return out;
}

FiberInvarianceResiduals fiber_invariance_residual(
    const WarpedProductSpec& spec, const ProductMetallicStructure& structure,
    std::uint64_t seed, const std::string& check_id, int samples) {
  const DomainSampler s = spec.product()->sampler(seed, check_id);
  const CounterRng rng(seed, check_id + "/vectors");
  const MetallicParams& params = structure.params;

  FiberInvarianceResiduals out;
  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd x =
        map_point(s, static_cast<std::size_t>(k), spec.dim());
    const Eigen::VectorXd xb = spec.base_part(x);
    const Eigen::MatrixXd Jt = structure.assembled.value_at(x, &params);
    const Eigen::MatrixXd H = warp_hessian(spec, xb, &params);

    const Eigen::VectorXd U = rand_vec(rng, k, 0, spec.m());
    const Eigen::VectorXd X = rand_vec(rng, k, 1, spec.n());
    const Eigen::VectorXd Y = rand_vec(rng, k, 2, spec.n());

    const Eigen::VectorXd JU = Jt * spec.lift_vertical(U);
    out.vertical_leak = std::max(
        out.vertical_leak, spec.base_part(JU).cwiseAbs().maxCoeff());

    // H^f(X,Y) J~U = H^f(J~X, Y) U, as product vectors.
    const Eigen::VectorXd JX = Jt * spec.lift_horizontal(X);
    const double hxy = X.dot(H * Y);
    const double hjxy = spec.base_part(JX).dot(H * Y);
    out.hessian_commutation = std::max(
        out.hessian_commutation,
        (hxy * JU - hjxy * spec.lift_vertical(U)).cwiseAbs().maxCoeff());
  }
  return out;
}

RicciInvarianceResiduals ricci_invariance_residuals(
    const WarpedProductSpec& spec, const LinearOperatorField& J1,
    const LinearOperatorField& J2, const MetallicParams& params,
    std::uint64_t seed, const std::string& check_id, int samples) {
  RicciInvarianceResiduals out;

  // Factor Ricci operators must commute with the factor structures.
  {
    const DomainSampler sb = spec.base()->sampler(seed, check_id + "/preb");
    const DomainSampler sf = spec.fiber()->sampler(seed, check_id + "/pref");
    for (int k = 0; k < samples; ++k) {
      const Eigen::VectorXd xb =
          map_point(sb, static_cast<std::size_t>(k), spec.n());
      const Eigen::MatrixXd Q1 =
          metric_at(*spec.base(), xb, &params)
              .llt()
              .solve(ricci_at(*spec.base(), xb, &params));
      const Eigen::MatrixXd J1v = J1.value_at(xb, &params);
      out.factor_precondition =
          std::max(out.factor_precondition,
                   (Q1 * J1v - J1v * Q1).cwiseAbs().maxCoeff());

      const Eigen::VectorXd xf =
          map_point(sf, static_cast<std::size_t>(k), spec.m());
      const Eigen::MatrixXd Q2 =
          metric_at(*spec.fiber(), xf, &params)
              .llt()
              .solve(ricci_at(*spec.fiber(), xf, &params));
      const Eigen::MatrixXd J2v = J2.value_at(xf, &params);
      out.factor_precondition =
          std::max(out.factor_precondition,
                   (Q2 * J2v - J2v * Q2).cwiseAbs().maxCoeff());
    }
  }

  const DomainSampler s = spec.product()->sampler(seed, check_id);
  const CounterRng rng(seed, check_id + "/vectors");
  const LinearOperatorField assembled = assemble_pair_field(spec, J1, J2);

  for (int k = 0; k < samples; ++k) {
    const Eigen::VectorXd x =
        map_point(s, static_cast<std::size_t>(k), spec.dim());
    const Eigen::VectorXd xb = spec.base_part(x);

    const Eigen::MatrixXd H = warp_hessian(spec, xb, &params);
    const Eigen::MatrixXd J1v = J1.value_at(xb, &params);
    const Eigen::VectorXd X = rand_vec(rng, k, 0, spec.n());
    const Eigen::VectorXd Y = rand_vec(rng, k, 1, spec.n());
    out.hessian_defect =
        std::max(out.hessian_defect,
                 std::abs((J1v * X).dot(H * Y) - X.dot(H * (J1v * Y))));

    const Eigen::MatrixXd S = ricci_at(*spec.product(), x, &params);
    const Eigen::MatrixXd Jt = assembled.value_at(x, &params);
    const Eigen::VectorXd V = rand_vec(rng, k, 2, spec.dim());
    const Eigen::VectorXd W = rand_vec(rng, k, 3, spec.dim());
    out.ricci_defect = std::max(
        out.ricci_defect, std::abs((Jt * V).dot(S * W) - V.dot(S * (Jt * W))));

    const Eigen::VectorXd Vv = spec.lift_vertical(rand_vec(rng, k, 4, spec.m()));
    const Eigen::VectorXd Wv = spec.lift_vertical(rand_vec(rng, k, 5, spec.m()));
    out.vertical_symmetry =
        std::max(out.vertical_symmetry,
                 std::abs((Jt * Vv).dot(S * Wv) - Vv.dot(S * (Jt * Wv))));
  }
  return out;
}

}  // namespace mwp
