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

#include "mwp/metallic.hpp"

#include <cmath>
#include <string>

namespace mwp {

namespace {

void require_positive(int p, int q) {
  if (p < 1 || q < 1)
    throw DomainError("metallic parameters must satisfy p >= 1, q >= 1 (got p=" +
                      std::to_string(p) + ", q=" + std::to_string(q) + ")");
}

void require_square(const LinearOperator& J, const char* what) {
  if (J.rows() != J.cols() || J.rows() == 0)
    throw DomainError(std::string(what) + " must be a nonempty square matrix");
}

constexpr double kStructureTol = 1e-10;

}  // namespace

double metallic_number(int p, int q) {
  require_positive(p, q);
  const double pd = static_cast<double>(p);
  const double qd = static_cast<double>(q);
  return (pd + std::sqrt(pd * pd + 4.0 * qd)) / 2.0;
}

MetallicParams MetallicParams::make(int p, int q) {
  MetallicParams mp;
  mp.p = p;
  mp.q = q;
  mp.sigma = metallic_number(p, q);
  mp.sigbar = static_cast<double>(p) - mp.sigma;
  return mp;
}

std::int64_t fibonacci(int p, int q, int n) {
  require_positive(p, q);
  if (n < 0) throw DomainError("fibonacci index must be nonnegative");
  std::int64_t prev = 0, cur = (n == 0) ? 0 : 1;
  for (int i = 1; i < n; ++i) {
    std::int64_t pg = 0, qg = 0, next = 0;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(p), cur, &pg) ||
        __builtin_mul_overflow(static_cast<std::int64_t>(q), prev, &qg) ||
        __builtin_add_overflow(pg, qg, &next))
      throw DomainError("fibonacci term overflows 64-bit integer at n=" +
                        std::to_string(i + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

double metallic_residual(const LinearOperator& J, const MetallicParams& params) {
  require_square(J, "operator");
  const Eigen::Index d = J.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  return (J * J - params.p * J - params.q * I).cwiseAbs().maxCoeff();
}

CompatibilityResidual compatibility_residual(const LinearOperator& J,
                                             const Eigen::MatrixXd& G,
                                             const MetallicParams& params) {
  require_square(J, "operator");
  require_square(G, "metric");
  if (J.rows() != G.rows())
    throw DomainError("operator and metric dimensions differ");
  CompatibilityResidual r;
  r.symmetry = (G * J - J.transpose() * G).cwiseAbs().maxCoeff();
  r.identity = (J.transpose() * G * J - params.p * G * J - params.q * G)
                   .cwiseAbs()
                   .maxCoeff();
  return r;
}

LinearOperator induced_metallic(const LinearOperator& F, int sign,
                                const MetallicParams& params) {
  require_square(F, "almost product structure");
  const Eigen::Index d = F.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const double ap = (F * F - I).cwiseAbs().maxCoeff();
  if (ap > kStructureTol)
    throw DomainError("operator is not almost-product: |F^2 - I| = " +
                      std::to_string(ap));
  const double c = (2.0 * params.sigma - params.p) / 2.0;
  return (sign >= 0 ? c : -c) * F + (params.p / 2.0) * I;
}

LinearOperator induced_product(const LinearOperator& J, int sign,
                               const MetallicParams& params) {
  require_square(J, "metallic structure");
  const double mr = metallic_residual(J, params);
  if (mr > kStructureTol)
    throw DomainError("operator is not metallic: residual = " +
                      std::to_string(mr));
  const Eigen::Index d = J.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const double s = 2.0 * params.sigma - params.p;
  // Solving J = +-((2 sigma - p)/2) F + (p/2) I for F puts the sign on the
  // whole bracket; only then do both signs square to I and round-trip.
  const Eigen::MatrixXd F = (2.0 / s) * J - (params.p / s) * I;
  return sign >= 0 ? F : Eigen::MatrixXd(-F);
}

ProjectorPair projectors(const LinearOperator& J, const MetallicParams& params) {
  require_square(J, "metallic structure");
  const double mr = metallic_residual(J, params);
  if (mr > kStructureTol)
    throw DomainError("operator is not metallic: residual = " +
                      std::to_string(mr));
  const Eigen::Index d = J.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const double s = 2.0 * params.sigma - params.p;
  ProjectorPair pp;
  pp.l = (-J + params.sigma * I) / s;
  pp.m = (J + (params.sigma - params.p) * I) / s;
  return pp;
}

namespace {

double power_identity_residual_impl(const LinearOperator& J,
                                    const MetallicParams& params, int n,
                                    double const_factor) {
  require_square(J, "operator");
  if (n < 1 || n > 12)
    throw DomainError("power identity exponent must be in 1..12");
  const Eigen::Index d = J.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd P = J;
  for (int i = 0; i < n; ++i) P = P * J;  // P = J^{n+1}
  const double gn = static_cast<double>(fibonacci(params.p, params.q, n));
  const double gn1 = static_cast<double>(fibonacci(params.p, params.q, n + 1));
  return (P - gn1 * J - const_factor * gn * I).cwiseAbs().maxCoeff();
}

}  // namespace

double power_identity_residual(const LinearOperator& J,
                               const MetallicParams& params, int n) {
  return power_identity_residual_impl(J, params, n,
                                      static_cast<double>(params.q));
}

double power_identity_residual_literal(const LinearOperator& J,
                                       const MetallicParams& params, int n) {
  return power_identity_residual_impl(J, params, n, 1.0);
}

}  // namespace mwp
