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

#include "mwp/chart.hpp"

#include <set>
#include <sstream>

namespace mwp {

namespace {

std::string point_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i)
    os << (i ? ", " : "") << x(i);
  os << ")";
  return os.str();
}

}  // namespace

ChartManifold ChartManifold::make(std::string name,
                                  std::vector<std::string> coords,
                                  std::vector<Interval> domain,
                                  std::vector<Expression> metric_row_major) {
  if (coords.empty())
    throw DomainError("chart '" + name + "' must have dimension >= 1");
  if (domain.size() != coords.size())
    throw DomainError("chart '" + name + "': domain/coordinate count mismatch");
  if (metric_row_major.size() != coords.size() * coords.size())
    throw DomainError("chart '" + name + "': metric must be dim x dim");

  std::set<std::string> seen;
  for (const auto& c : coords)
    if (!seen.insert(c).second)
      throw DomainError("chart '" + name + "': duplicate coordinate '" + c +
                        "'");
  for (const auto& iv : domain)
    if (!(iv.lo < iv.hi))
      throw DomainError("chart '" + name + "': empty domain interval");

  for (const auto& e : metric_row_major)
    for (const auto& v : e.free_vars())
      if (!seen.count(v))
        throw ReferenceError("chart '" + name + "': metric component `" +
                             e.str() + "` uses unknown coordinate '" + v + "'");

  ChartManifold m;
  m.name_ = std::move(name);
  m.coords_ = std::move(coords);
  m.domain_ = std::move(domain);
  m.metric_ = std::move(metric_row_major);
  return m;
}

bool ChartManifold::contains(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) return false;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const Interval& iv = domain_[static_cast<std::size_t>(i)];
    if (x(i) < iv.lo || x(i) > iv.hi) return false;
  }
  return true;
}

void ChartManifold::require_inside(const Eigen::VectorXd& x) const {
  if (!contains(x))
    throw DomainError("point " + point_string(x) + " outside domain of chart '" +
                      name_ + "'");
}

void ChartManifold::validate_metric(const MetallicParams* params,
                                    int samples) const {
  DomainSampler s(0, "chart-validate/" + name_, domain_);
  for (int k = 0; k < samples; ++k) {
    const std::vector<double> pt = s.point(static_cast<std::size_t>(k));
    const Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(pt.data(), dim());
    Eigen::MatrixXd g(dim(), dim());
    for (Eigen::Index i = 0; i < dim(); ++i)
      for (Eigen::Index j = 0; j < dim(); ++j)
        g(i, j) = metric(i, j).eval(env(x, params));
    const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
      throw DomainError("chart '" + name_ + "': metric asymmetric by " +
                        std::to_string(asym) + " at " + point_string(x));
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
      throw DomainError("chart '" + name_ +
                        "': metric not positive definite at " +
                        point_string(x));
  }
}

LinearOperatorField LinearOperatorField::make(
    ChartPtr chart, std::vector<Expression> entries_row_major) {
  if (!chart) throw DomainError("operator field requires a chart");
  const std::size_t d = static_cast<std::size_t>(chart->dim());
  if (entries_row_major.size() != d * d)
    throw DomainError("operator field on chart '" + chart->name() +
                      "' must be dim x dim");
  std::set<std::string> allowed(chart->coords().begin(),
                                chart->coords().end());
  for (const auto& e : entries_row_major)
    for (const auto& v : e.free_vars())
      if (!allowed.count(v))
        throw ReferenceError("operator entry `" + e.str() +
                             "` uses unknown coordinate '" + v +
                             "' on chart '" + chart->name() + "'");
  LinearOperatorField f;
  f.chart_ = std::move(chart);
  f.entries_ = std::move(entries_row_major);
  return f;
}

LinearOperatorField LinearOperatorField::constant(ChartPtr chart,
                                                  const Eigen::MatrixXd& value) {
  if (!chart) throw DomainError("operator field requires a chart");
  if (value.rows() != chart->dim() || value.cols() != chart->dim())
    throw DomainError("constant operator size does not match chart dimension");
  std::vector<Expression> entries;
  entries.reserve(static_cast<std::size_t>(value.size()));
  for (Eigen::Index i = 0; i < value.rows(); ++i)
    for (Eigen::Index j = 0; j < value.cols(); ++j)
      entries.push_back(Expression::number(value(i, j)));
  return make(std::move(chart), std::move(entries));
}

Eigen::MatrixXd LinearOperatorField::value_at(const Eigen::VectorXd& x,
                                              const MetallicParams* params) const {
  const EvalEnv e = chart_->env(x, params);
  Eigen::MatrixXd J(dim(), dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    for (Eigen::Index j = 0; j < dim(); ++j) J(i, j) = entry(i, j).eval(e);
  return J;
}

std::vector<Eigen::MatrixXd> LinearOperatorField::derivative_at(
    const Eigen::VectorXd& x, const MetallicParams* params) const {
  const EvalEnv e = chart_->env(x, params);
  std::vector<Eigen::MatrixXd> d(static_cast<std::size_t>(dim()),
                                 Eigen::MatrixXd::Zero(dim(), dim()));
  for (Eigen::Index i = 0; i < dim(); ++i)
    for (Eigen::Index j = 0; j < dim(); ++j) {
      const Jet2 jet = entry(i, j).eval_jet2(e);
      for (Eigen::Index k = 0; k < dim(); ++k)
        d[static_cast<std::size_t>(k)](i, j) = jet.grad()(k);
    }
  return d;
}

}  // namespace mwp
