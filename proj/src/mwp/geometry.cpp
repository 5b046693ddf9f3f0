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

#include "mwp/geometry.hpp"

#include <cmath>
#include <sstream>

namespace mwp {

Eigen::MatrixXd Christoffel::direction(Eigen::Index i) const {
  Eigen::MatrixXd m(d_, d_);
  for (Eigen::Index k = 0; k < d_; ++k)
    for (Eigen::Index j = 0; j < d_; ++j) m(k, j) = (*this)(k, i, j);
  return m;
}

Eigen::VectorXd RiemannTensor::apply(const Eigen::VectorXd& X,
                                     const Eigen::VectorXd& Y,
                                     const Eigen::VectorXd& Z) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d_);
  for (Eigen::Index l = 0; l < d_; ++l) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d_; ++k)
      for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j)
          acc += (*this)(l, k, i, j) * X(i) * Y(j) * Z(k);
    out(l) = acc;
  }
  return out;
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double x : v_) m = std::max(m, std::abs(x));
  return m;
}

double PointGeometry::lowered(const Eigen::VectorXd& X,
                              const Eigen::VectorXd& Y,
                              const Eigen::VectorXd& Z,
                              const Eigen::VectorXd& W) const {
  return W.dot(g * riemann.apply(X, Y, Z));
}

namespace {

std::string point_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ")";
  return os.str();
}

struct MetricJets {
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  std::vector<Jet2> jets;  // row-major, dim*dim
};

MetricJets metric_jets_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                          const MetallicParams* params) {
  chart.require_inside(x);
  const Eigen::Index d = chart.dim();
  const EvalEnv env = chart.env(x, params);
  MetricJets m;
  m.jets.reserve(static_cast<std::size_t>(d * d));
  m.g.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Jet2 jet = chart.metric(i, j).eval_jet2(env);
      m.g(i, j) = jet.value();
      m.jets.push_back(std::move(jet));
    }
  const double asym = (m.g - m.g.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw DomainError("metric of chart '" + chart.name() +
                      "' asymmetric at " + point_string(x));
  Eigen::LLT<Eigen::MatrixXd> llt(m.g);
  if (llt.info() != Eigen::Success)
    throw DomainError("metric of chart '" + chart.name() +
                      "' not positive definite at " + point_string(x));
  m.ginv = llt.solve(Eigen::MatrixXd::Identity(d, d));
  return m;
}

const Jet2& jet_of(const MetricJets& m, Eigen::Index i, Eigen::Index j,
                   Eigen::Index d) {
  return m.jets[static_cast<std::size_t>(i * d + j)];
}

}  // namespace

PointGeometry geometry_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                          const MetallicParams* params) {
  const Eigen::Index d = chart.dim();
  MetricJets m = metric_jets_at(chart, x, params);

  PointGeometry pg;
  pg.x = x;
  pg.g = m.g;
  pg.ginv = m.ginv;

  // First derivatives of the metric: dg[k](i,j) = d_k g_ij.
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(d),
                                  Eigen::MatrixXd::Zero(d, d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        dg[static_cast<std::size_t>(k)](i, j) = jet_of(m, i, j, d).grad()(k);

  // Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
  pg.gamma = Christoffel(d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < d; ++l) {
          const double c = dg[static_cast<std::size_t>(i)](j, l) +
                           dg[static_cast<std::size_t>(j)](i, l) -
                           dg[static_cast<std::size_t>(l)](i, j);
          acc += m.ginv(k, l) * c;
        }
        pg.gamma(k, i, j) = 0.5 * acc;
      }

  // d_m Gamma via the same formula, differentiated: needs d_m g^{-1} =
  // -g^{-1} (d_m g) g^{-1} and the metric Hessians from the jets.
  pg.dgamma.assign(static_cast<std::size_t>(d), Christoffel(d));
  std::vector<Eigen::MatrixXd> dginv(static_cast<std::size_t>(d));
  for (Eigen::Index mm = 0; mm < d; ++mm)
    dginv[static_cast<std::size_t>(mm)] =
        -m.ginv * dg[static_cast<std::size_t>(mm)] * m.ginv;

  for (Eigen::Index mm = 0; mm < d; ++mm) {
    Christoffel& dG = pg.dgamma[static_cast<std::size_t>(mm)];
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
          double acc = 0.0;
          for (Eigen::Index l = 0; l < d; ++l) {
            const double c = dg[static_cast<std::size_t>(i)](j, l) +
                             dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j);
            const double dc = jet_of(m, j, l, d).hess()(mm, i) +
                              jet_of(m, i, l, d).hess()(mm, j) -
                              jet_of(m, i, j, d).hess()(mm, l);
            acc += dginv[static_cast<std::size_t>(mm)](k, l) * c +
                   m.ginv(k, l) * dc;
          }
          dG(k, i, j) = 0.5 * acc;
        }
  }

  // R^l_{kij} = d_j Gamma^l_{ik} - d_i Gamma^l_{jk}
  //            + Gamma^l_{jm} Gamma^m_{ik} - Gamma^l_{im} Gamma^m_{jk}.
  pg.riemann = RiemannTensor(d);
  for (Eigen::Index l = 0; l < d; ++l)
    for (Eigen::Index k = 0; k < d; ++k)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
          double acc = pg.dgamma[static_cast<std::size_t>(j)](l, i, k) -
                       pg.dgamma[static_cast<std::size_t>(i)](l, j, k);
          for (Eigen::Index mm = 0; mm < d; ++mm)
            acc += pg.gamma(l, j, mm) * pg.gamma(mm, i, k) -
                   pg.gamma(l, i, mm) * pg.gamma(mm, j, k);
          pg.riemann(l, k, i, j) = acc;
        }

  // S_ij = trace(Z -> R(e_i, Z) e_j).
  pg.ricci = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) acc += pg.riemann(k, j, i, k);
      pg.ricci(i, j) = acc;
    }

  return pg;
}

Eigen::MatrixXd metric_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                          const MetallicParams* params) {
  return metric_jets_at(chart, x, params).g;
}

Christoffel christoffel_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                           const MetallicParams* params) {
  return geometry_at(chart, x, params).gamma;
}

RiemannTensor riemann_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                         const MetallicParams* params) {
  return geometry_at(chart, x, params).riemann;
}

Eigen::MatrixXd ricci_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                         const MetallicParams* params) {
  return geometry_at(chart, x, params).ricci;
}

double sectional_at(const ChartManifold& chart, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& X, const Eigen::VectorXd& Y,
                    const MetallicParams* params) {
  const PointGeometry pg = geometry_at(chart, x, params);
  const double gxx = X.dot(pg.g * X);
  const double gyy = Y.dot(pg.g * Y);
  const double gxy = X.dot(pg.g * Y);
  const double area2 = gxx * gyy - gxy * gxy;
  if (area2 <= 1e-12)
    throw DomainError("sectional curvature of a degenerate plane");
  return pg.lowered(X, Y, X, Y) / area2;
}

Eigen::VectorXd gradient_at(const ChartManifold& chart, const Expression& phi,
                            const Eigen::VectorXd& x,
                            const MetallicParams* params) {
  const MetricJets m = metric_jets_at(chart, x, params);
  const Jet2 j = phi.eval_jet2(chart.env(x, params));
  return m.ginv * j.grad();
}

double grad_norm_sq_at(const ChartManifold& chart, const Expression& phi,
                       const Eigen::VectorXd& x, const MetallicParams* params) {
  const MetricJets m = metric_jets_at(chart, x, params);
  const Jet2 j = phi.eval_jet2(chart.env(x, params));
  return j.grad().dot(m.ginv * j.grad());
}

Eigen::MatrixXd hessian_at(const ChartManifold& chart, const Expression& phi,
                           const Eigen::VectorXd& x,
                           const MetallicParams* params) {
  const PointGeometry pg = geometry_at(chart, x, params);
  const Jet2 j = phi.eval_jet2(chart.env(x, params));
  const Eigen::Index d = chart.dim();
  Eigen::MatrixXd h = j.hess();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index k = 0; k < d; ++k)
        h(i, jj) -= pg.gamma(k, i, jj) * j.grad()(k);
  return h;
}

double laplacian_at(const ChartManifold& chart, const Expression& phi,
                    const Eigen::VectorXd& x, const MetallicParams* params) {
  const PointGeometry pg = geometry_at(chart, x, params);
  const Jet2 j = phi.eval_jet2(chart.env(x, params));
  const Eigen::Index d = chart.dim();
  Eigen::MatrixXd h = j.hess();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index jj = 0; jj < d; ++jj)
      for (Eigen::Index k = 0; k < d; ++k)
        h(i, jj) -= pg.gamma(k, i, jj) * j.grad()(k);
  return (pg.ginv * h).trace();
}

Eigen::VectorXd covariant_derivative_at(const ChartManifold& chart,
                                        const std::vector<Expression>& field,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& X,
                                        const MetallicParams* params) {
  const Eigen::Index d = chart.dim();
  if (static_cast<Eigen::Index>(field.size()) != d)
    throw DomainError("vector field component count does not match chart dim");
  const PointGeometry pg = geometry_at(chart, x, params);
  const EvalEnv env = chart.env(x, params);
  Eigen::VectorXd Y(d);
  Eigen::MatrixXd dY(d, d);  // dY(k, i) = d_i Y^k
  for (Eigen::Index k = 0; k < d; ++k) {
    const Jet2 j = field[static_cast<std::size_t>(k)].eval_jet2(env);
    Y(k) = j.value();
    for (Eigen::Index i = 0; i < d; ++i) dY(k, i) = j.grad()(i);
  }
  Eigen::VectorXd out = dY * X;
  for (Eigen::Index k = 0; k < d; ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        acc += pg.gamma(k, i, j) * X(i) * Y(j);
    out(k) += acc;
  }
  return out;
}

double nabla_operator_residual_at(const LinearOperatorField& J,
                                  const Eigen::VectorXd& x,
                                  const MetallicParams* params) {
  const ChartManifold& chart = *J.chart();
  const PointGeometry pg = geometry_at(chart, x, params);
  const Eigen::MatrixXd Jv = J.value_at(x, params);
  const std::vector<Eigen::MatrixXd> dJ = J.derivative_at(x, params);
  double res = 0.0;
  for (Eigen::Index i = 0; i < chart.dim(); ++i) {
    const Eigen::MatrixXd Gi = pg.gamma.direction(i);
    const Eigen::MatrixXd nab =
        dJ[static_cast<std::size_t>(i)] + Gi * Jv - Jv * Gi;
    res = std::max(res, nab.cwiseAbs().maxCoeff());
  }
  return res;
}

double nabla_operator_residual(const LinearOperatorField& J,
                               const MetallicParams* params, std::uint64_t seed,
                               const std::string& check_id, int samples) {
  const DomainSampler s = J.chart()->sampler(seed, check_id);
  double res = 0.0;
  for (int k = 0; k < samples; ++k) {
    const std::vector<double> pt = s.point(static_cast<std::size_t>(k));
    const Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(pt.data(), J.chart()->dim());
    res = std::max(res, nabla_operator_residual_at(J, x, params));
  }
  return res;
}

double nabla_metric_residual_at(const ChartManifold& chart,
                                const Eigen::VectorXd& x,
                                const MetallicParams* params) {
  const Eigen::Index d = chart.dim();
  const PointGeometry pg = geometry_at(chart, x, params);
  const EvalEnv env = chart.env(x, params);
  double res = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const Jet2 jet = chart.metric(i, j).eval_jet2(env);
      for (Eigen::Index k = 0; k < d; ++k) {
        double v = jet.grad()(k);
        for (Eigen::Index l = 0; l < d; ++l)
          v -= pg.gamma(l, k, i) * pg.g(l, j) + pg.gamma(l, k, j) * pg.g(i, l);
        res = std::max(res, std::abs(v));
      }
    }
  return res;
}

}  // namespace mwp
