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

#include "mwp/warped.hpp"

#include <cmath>
#include <set>
#include <string>

namespace mwp {

namespace {

Expression warp_squared(const Expression& warp) {
  return Expression::pow(warp, Expression::number(2));
}

void check_kinds(const std::vector<LiftedVector>& inputs,
                 std::initializer_list<LiftedVector::Kind> expected,
                 int case_no) {
  if (inputs.size() != expected.size())
    throw DomainError("curvature case " + std::to_string(case_no) +
                      " expects " + std::to_string(expected.size()) +
                      " lifted vectors");
  std::size_t i = 0;
  for (LiftedVector::Kind k : expected) {
    if (inputs[i].kind != k)
      throw DomainError("curvature case " + std::to_string(case_no) +
                        ": input " + std::to_string(i) +
                        " has the wrong lift kind");
    ++i;
  }
}

void require_fiber_dim(const WarpedProductSpec& spec, int case_no) {
  if (spec.m() <= 1)
    throw DomainError("case " + std::to_string(case_no) +
                      " requires fiber dimension m > 1");
}

}  // namespace

WarpedProductSpec WarpedProductSpec::make(ChartPtr base, ChartPtr fiber,
                                          Expression warp,
                                          const MetallicParams* params) {
  if (!base || !fiber) throw DomainError("warped product requires two charts");

  std::set<std::string> base_coords(base->coords().begin(),
                                    base->coords().end());
  for (const auto& c : fiber->coords())
    if (base_coords.count(c))
      throw DomainError("coordinate '" + c +
                        "' appears in both base and fiber charts");
  for (const auto& v : warp.free_vars())
    if (!base_coords.count(v))
      throw ReferenceError("warping function `" + warp.str() +
                           "` uses non-base coordinate '" + v + "'");

  // Hard positivity check at sampled base points.
  {
    const DomainSampler s = base->sampler(0, "warp-positivity");
    for (int k = 0; k < 32; ++k) {
      const auto p = s.point(static_cast<std::size_t>(k));
      const Eigen::VectorXd xb =
          Eigen::Map<const Eigen::VectorXd>(p.data(), base->dim());
      const double f = warp.eval(base->env(xb, params));
      if (!(f > 0.0))
        throw DomainError("warping function `" + warp.str() +
                          "` is not positive at a sampled base point");
    }
  }

  // Assemble the product chart: coords, box, block metric diag(g1, f^2 g2).
  std::vector<std::string> coords = base->coords();
  coords.insert(coords.end(), fiber->coords().begin(), fiber->coords().end());
  std::vector<Interval> domain = base->domain();
  domain.insert(domain.end(), fiber->domain().begin(), fiber->domain().end());

  const Eigen::Index n = base->dim();
  const Eigen::Index m = fiber->dim();
  const Eigen::Index d = n + m;
  const Expression zero = Expression::number(0.0);
  const Expression f2 = warp_squared(warp);
  std::vector<Expression> metric(static_cast<std::size_t>(d * d), zero);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      metric[static_cast<std::size_t>(i * d + j)] = base->metric(i, j);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      metric[static_cast<std::size_t>((n + a) * d + (n + b))] =
          f2 * fiber->metric(a, b);

  WarpedProductSpec spec;
  spec.base_ = std::move(base);
  spec.fiber_ = std::move(fiber);
  spec.warp_ = std::move(warp);
  spec.product_ = std::make_shared<ChartManifold>(
      ChartManifold::make(spec.base_->name() + "_x_" + spec.fiber_->name(),
                          std::move(coords), std::move(domain),
                          std::move(metric)));
  return spec;
}

bool WarpedProductSpec::is_plain_product() const {
  if (!warp_.is_constant()) return false;
  return std::abs(warp_.eval(EvalEnv()) - 1.0) == 0.0;
}

Eigen::VectorXd WarpedProductSpec::base_part(const Eigen::VectorXd& v) const {
  return v.head(n());
}

Eigen::VectorXd WarpedProductSpec::fiber_part(const Eigen::VectorXd& v) const {
  return v.tail(m());
}

Eigen::VectorXd WarpedProductSpec::lift_horizontal(
    const Eigen::VectorXd& base_vec) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  out.head(n()) = base_vec;
  return out;
}

Eigen::VectorXd WarpedProductSpec::lift_vertical(
    const Eigen::VectorXd& fiber_vec) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  out.tail(m()) = fiber_vec;
  return out;
}

Eigen::VectorXd WarpedProductSpec::assemble(
    const Eigen::VectorXd& base_vec, const Eigen::VectorXd& fiber_vec) const {
  Eigen::VectorXd out(dim());
  out.head(n()) = base_vec;
  out.tail(m()) = fiber_vec;
  return out;
}

double warp_value(const WarpedProductSpec& spec, const Eigen::VectorXd& xb,
                  const MetallicParams* params) {
  return spec.warp().eval(spec.base()->env(xb, params));
}

Eigen::MatrixXd warp_hessian(const WarpedProductSpec& spec,
                             const Eigen::VectorXd& xb,
                             const MetallicParams* params) {
  return hessian_at(*spec.base(), spec.warp(), xb, params);
}

Eigen::VectorXd warp_gradient(const WarpedProductSpec& spec,
                              const Eigen::VectorXd& xb,
                              const MetallicParams* params) {
  return gradient_at(*spec.base(), spec.warp(), xb, params);
}

double warp_grad_norm_sq(const WarpedProductSpec& spec,
                         const Eigen::VectorXd& xb,
                         const MetallicParams* params) {
  return grad_norm_sq_at(*spec.base(), spec.warp(), xb, params);
}

double warp_laplacian(const WarpedProductSpec& spec, const Eigen::VectorXd& xb,
                      const MetallicParams* params) {
  return laplacian_at(*spec.base(), spec.warp(), xb, params);
}

Eigen::VectorXd connection_closed_form(const WarpedProductSpec& spec,
                                       const Eigen::VectorXd& point,
                                       const Eigen::VectorXd& X,
                                       const std::vector<Expression>& y_base,
                                       const std::vector<Expression>& y_fiber,
                                       const MetallicParams* params) {
  if (point.size() != spec.dim() || X.size() != spec.dim())
    throw DomainError("connection inputs must live on the product chart");
  const Eigen::VectorXd xb = spec.base_part(point);
  const Eigen::VectorXd xf = spec.fiber_part(point);
  const Eigen::VectorXd X1 = spec.base_part(X);
  const Eigen::VectorXd X2 = spec.fiber_part(X);

  // Factor fields evaluated at the point.
  const EvalEnv benv = spec.base()->env(xb, params);
  const EvalEnv fenv = spec.fiber()->env(xf, params);
  Eigen::VectorXd Y1(spec.n()), Y2(spec.m());
  for (Eigen::Index k = 0; k < spec.n(); ++k)
    Y1(k) = y_base[static_cast<std::size_t>(k)].eval(benv);
  for (Eigen::Index k = 0; k < spec.m(); ++k)
    Y2(k) = y_fiber[static_cast<std::size_t>(k)].eval(fenv);

  const Eigen::VectorXd base_cov =
      covariant_derivative_at(*spec.base(), y_base, xb, X1, params);
  const Eigen::VectorXd fiber_cov =
      covariant_derivative_at(*spec.fiber(), y_fiber, xf, X2, params);

  const Expression f2 = warp_squared(spec.warp());
  const Jet2 f2jet = f2.eval_jet2(benv);
  const Eigen::VectorXd grad_f2 =
      gradient_at(*spec.base(), f2, xb, params);
  const Eigen::MatrixXd g2 = metric_at(*spec.fiber(), xf, params);

  const double g2XY = X2.dot(g2 * Y2);
  const double Xf2 = f2jet.grad().dot(X1);
  const double Yf2 = f2jet.grad().dot(Y1);
  const double inv2f2 = 0.5 / f2jet.value();

  const Eigen::VectorXd base_out = base_cov - 0.5 * g2XY * grad_f2;
  const Eigen::VectorXd fiber_out =
      fiber_cov + inv2f2 * Xf2 * Y2 + inv2f2 * Yf2 * X2;
  return spec.assemble(base_out, fiber_out);
}

Eigen::VectorXd riemann_closed_form(const WarpedProductSpec& spec, int case_no,
                                    const Eigen::VectorXd& point,
                                    const std::vector<LiftedVector>& inputs,
                                    const MetallicParams* params) {
  using Kind = LiftedVector::Kind;
  const Eigen::VectorXd xb = spec.base_part(point);
  const Eigen::VectorXd xf = spec.fiber_part(point);

  switch (case_no) {
    case 1: {
      check_kinds(inputs, {Kind::Horizontal, Kind::Horizontal,
                           Kind::Horizontal}, 1);
      const RiemannTensor R1 = riemann_at(*spec.base(), xb, params);
      return spec.lift_horizontal(
          R1.apply(inputs[0].factor, inputs[1].factor, inputs[2].factor));
    }
    case 2: {
      require_fiber_dim(spec, 2);
      check_kinds(inputs, {Kind::Vertical, Kind::Horizontal,
                           Kind::Horizontal}, 2);
      const double f = warp_value(spec, xb, params);
      const Eigen::MatrixXd H = warp_hessian(spec, xb, params);
      const double hxy = inputs[1].factor.dot(H * inputs[2].factor);
      return spec.lift_vertical((hxy / f) * inputs[0].factor);
    }
    case 3: {
      if (inputs.size() != 3)
        throw DomainError("curvature case 3 expects 3 lifted vectors");
      const bool hhv = inputs[0].kind == Kind::Horizontal &&
                       inputs[1].kind == Kind::Horizontal &&
                       inputs[2].kind == Kind::Vertical;
      const bool vvh = inputs[0].kind == Kind::Vertical &&
                       inputs[1].kind == Kind::Vertical &&
                       inputs[2].kind == Kind::Horizontal;
      if (!hhv && !vvh)
        throw DomainError("curvature case 3 expects (H,H,V) or (V,V,H)");
      return Eigen::VectorXd::Zero(spec.dim());
    }
    case 4: {
      require_fiber_dim(spec, 4);
      check_kinds(inputs, {Kind::Vertical, Kind::Vertical, Kind::Vertical}, 4);
      const Eigen::VectorXd& U = inputs[0].factor;
      const Eigen::VectorXd& V = inputs[1].factor;
      const Eigen::VectorXd& W = inputs[2].factor;
      const RiemannTensor R2 = riemann_at(*spec.fiber(), xf, params);
      const double f = warp_value(spec, xb, params);
      const double ratio = warp_grad_norm_sq(spec, xb, params) / (f * f);
      // g here is the warped metric: f^2 g2 on vertical pairs.
      const Eigen::MatrixXd g2 = metric_at(*spec.fiber(), xf, params);
      const double gUW = f * f * U.dot(g2 * W);
      const double gVW = f * f * V.dot(g2 * W);
      return spec.lift_vertical(R2.apply(U, V, W) -
                                ratio * (gUW * V - gVW * U));
    }
    case 5: {
      require_fiber_dim(spec, 5);
      check_kinds(inputs, {Kind::Horizontal, Kind::Vertical, Kind::Vertical},
                  5);
      const Eigen::VectorXd& X = inputs[0].factor;
      const Eigen::VectorXd& U = inputs[1].factor;
      const Eigen::VectorXd& V = inputs[2].factor;
      const double f = warp_value(spec, xb, params);
      const Eigen::MatrixXd g2 = metric_at(*spec.fiber(), xf, params);
      const double gUV = f * f * U.dot(g2 * V);
      // nabla_X grad f = raise of Hess(f)(X, .) since nabla g1 = 0.
      const Eigen::MatrixXd H = warp_hessian(spec, xb, params);
      const Eigen::MatrixXd g1inv = metric_at(*spec.base(), xb, params)
                                         .llt()
                                         .solve(Eigen::MatrixXd::Identity(
                                             spec.n(), spec.n()));
      const Eigen::VectorXd nabla_grad = g1inv * (H * X);
      return spec.lift_horizontal((gUV / f) * nabla_grad);
    }
    default:
      throw DomainError("curvature case must be 1..5");
  }
}

double ricci_closed_form(const WarpedProductSpec& spec, int case_no,
                         const Eigen::VectorXd& point,
                         const std::vector<LiftedVector>& inputs,
                         const MetallicParams* params) {
  using Kind = LiftedVector::Kind;
  if (spec.m() <= 1)
    throw DomainError("Ricci closed forms require fiber dimension m > 1");
  const Eigen::VectorXd xb = spec.base_part(point);
  const Eigen::VectorXd xf = spec.fiber_part(point);
  if (inputs.size() != 2)
    throw DomainError("Ricci case expects 2 lifted vectors");

  switch (case_no) {
    case 1: {
      check_kinds(inputs, {Kind::Horizontal, Kind::Horizontal}, 1);
      const Eigen::MatrixXd S1 = ricci_at(*spec.base(), xb, params);
      const double f = warp_value(spec, xb, params);
      const Eigen::MatrixXd H = warp_hessian(spec, xb, params);
      const double m = static_cast<double>(spec.m());
      return inputs[0].factor.dot(S1 * inputs[1].factor) -
             (m / f) * inputs[0].factor.dot(H * inputs[1].factor);
    }
    case 2: {
      const bool hv = inputs[0].kind == Kind::Horizontal &&
                      inputs[1].kind == Kind::Vertical;
      const bool vh = inputs[0].kind == Kind::Vertical &&
                      inputs[1].kind == Kind::Horizontal;
      if (!hv && !vh)
        throw DomainError("Ricci case 2 expects one lift of each kind");
      return 0.0;
    }
    case 3: {
      check_kinds(inputs, {Kind::Vertical, Kind::Vertical}, 3);
      const Eigen::MatrixXd S2 = ricci_at(*spec.fiber(), xf, params);
      const double f = warp_value(spec, xb, params);
      const double lap = warp_laplacian(spec, xb, params);
      const double gn = warp_grad_norm_sq(spec, xb, params);
      const double m = static_cast<double>(spec.m());
      const Eigen::MatrixXd g2 = metric_at(*spec.fiber(), xf, params);
      const double gVW = f * f * inputs[0].factor.dot(g2 * inputs[1].factor);
      return inputs[0].factor.dot(S2 * inputs[1].factor) -
             (lap / f + (m - 1.0) * gn / (f * f)) * gVW;
    }
    default:
      throw DomainError("Ricci case must be 1..3");
  }
}

std::pair<double, double> product_case_residuals(const WarpedProductSpec& spec,
                                                 const MetallicParams* params,
                                                 std::uint64_t seed,
                                                 const std::string& check_id,
                                                 int samples) {
  if (!spec.is_plain_product())
    throw DomainError("product-case residuals require warp identically 1");
  const Eigen::Index d = spec.dim();
  const DomainSampler s = spec.product()->sampler(seed, check_id);
  const CounterRng rng(seed, check_id + "/vectors");
  double riemann_res = 0.0;
  double ricci_res = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto p = s.point(static_cast<std::size_t>(k));
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), d);
    const Eigen::VectorXd xb = spec.base_part(x);
    const Eigen::VectorXd xf = spec.fiber_part(x);

    const PointGeometry pg = geometry_at(*spec.product(), x, params);
    const RiemannTensor R1 = riemann_at(*spec.base(), xb, params);
    const RiemannTensor R2 = riemann_at(*spec.fiber(), xf, params);
    const Eigen::MatrixXd S1 = ricci_at(*spec.base(), xb, params);
    const Eigen::MatrixXd S2 = ricci_at(*spec.fiber(), xf, params);

    Eigen::VectorXd X(d), Y(d), Z(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      X(i) = rng.symmetric(k, 0, static_cast<std::uint64_t>(i));
      Y(i) = rng.symmetric(k, 1, static_cast<std::uint64_t>(i));
      Z(i) = rng.symmetric(k, 2, static_cast<std::uint64_t>(i));
    }

    const Eigen::VectorXd lhs = pg.riemann.apply(X, Y, Z);
    const Eigen::VectorXd rhs = spec.assemble(
        R1.apply(spec.base_part(X), spec.base_part(Y), spec.base_part(Z)),
        R2.apply(spec.fiber_part(X), spec.fiber_part(Y), spec.fiber_part(Z)));
    riemann_res = std::max(riemann_res, (lhs - rhs).cwiseAbs().maxCoeff());

    const double slhs = X.dot(pg.ricci * Y);
    const double srhs = spec.base_part(X).dot(S1 * spec.base_part(Y)) +
                        spec.fiber_part(X).dot(S2 * spec.fiber_part(Y));
    ricci_res = std::max(ricci_res, std::abs(slhs - srhs));
  }
  return {riemann_res, ricci_res};
}

}  // namespace mwp
