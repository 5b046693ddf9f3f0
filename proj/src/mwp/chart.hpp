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

#ifndef MWP_CHART_HPP
#define MWP_CHART_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mwp/expr.hpp"
#include "mwp/sampling.hpp"

namespace mwp {

/// A coordinate chart with a symbolic Riemannian metric: named coordinates,
/// a sampling box, and a dim x dim matrix of metric-component expressions.
/// Immutable after construction; evaluation is pure.
class ChartManifold {
public:
  /// Validates shapes and that metric components only use chart
  /// coordinates. Throws DomainError / ReferenceError.
  static ChartManifold make(std::string name, std::vector<std::string> coords,
                            std::vector<Interval> domain,
                            std::vector<Expression> metric_row_major);

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(coords_.size()); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Interval>& domain() const { return domain_; }

  const Expression& metric(Eigen::Index i, Eigen::Index j) const {
    return metric_[static_cast<std::size_t>(i * dim() + j)];
  }

  /// True if x lies in the closed domain box.
  bool contains(const Eigen::VectorXd& x) const;

  /// Throws DomainError when x is outside the domain box.
  void require_inside(const Eigen::VectorXd& x) const;

  EvalEnv env(const Eigen::VectorXd& x, const MetallicParams* params) const {
    return EvalEnv(coords_, std::span<const double>(x.data(),
                                                    static_cast<std::size_t>(x.size())),
                   params);
  }

  DomainSampler sampler(std::uint64_t seed, const std::string& check_id) const {
    return DomainSampler(seed, check_id, domain_);
  }

  /// Checks numeric symmetry (1e-12) and positive definiteness (Cholesky)
  /// of the metric at `samples` deterministic points. Throws DomainError
  /// with the offending point on failure.
  void validate_metric(const MetallicParams* params, int samples = 25) const;

private:
  std::string name_;
  std::vector<std::string> coords_;
  std::vector<Interval> domain_;
  std::vector<Expression> metric_;
};

using ChartPtr = std::shared_ptr<const ChartManifold>;

/// Matrix of expressions representing a (1,1)-tensor field on a chart.
class LinearOperatorField {
public:
  static LinearOperatorField make(ChartPtr chart,
                                  std::vector<Expression> entries_row_major);

  /// Constant-coefficient field from a fixed matrix.
  static LinearOperatorField constant(ChartPtr chart,
                                      const Eigen::MatrixXd& value);

  const ChartPtr& chart() const { return chart_; }
  Eigen::Index dim() const { return chart_->dim(); }

  const Expression& entry(Eigen::Index i, Eigen::Index j) const {
    return entries_[static_cast<std::size_t>(i * dim() + j)];
  }

  Eigen::MatrixXd value_at(const Eigen::VectorXd& x,
                           const MetallicParams* params) const;

  /// Entry-wise partial derivatives at x: result[k](i,j) = d_k J^i_j.
  std::vector<Eigen::MatrixXd> derivative_at(const Eigen::VectorXd& x,
                                             const MetallicParams* params) const;

private:
  ChartPtr chart_;
  std::vector<Expression> entries_;
};

}  // namespace mwp

#endif  // MWP_CHART_HPP
