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

#ifndef MWP_GALLERY_HPP
#define MWP_GALLERY_HPP

#include "mwp/warped.hpp"

namespace mwp {

// The worked example: the cone-like submanifold of R^{2n} swept by
//   (u cos a_1, u sin a_1, ..., u cos a_n, u sin a_n),   u > 0,
// its orthogonal frame Z_0, Z_1..Z_n, the ambient metallic structure that
// scales the first 2k coordinates by sigma and the rest by sigbar, and the
// induced warped metric n du^2 + u^2 sum da_i^2.

struct ExampleConfig {
  int n = 2;          // number of angle coordinates
  int k = 1;          // split index, 0..n (the paper's split uses 2..n-1)
  MetallicParams params;
  double u = 1.0;     // > 0
  std::vector<double> alpha;  // n angles

  static ExampleConfig make(int n, int k, MetallicParams params, double u,
                            std::vector<double> alpha);
};

/// The frame Z_0, Z_1..Z_n at the configured point, as 2n-dim ambient
/// vectors (Z_0 first).
std::vector<Eigen::VectorXd> frame_at(const ExampleConfig& cfg);

/// Gram matrix of the frame under the ambient scalar product; equals
/// diag(n, u^2, ..., u^2).
Eigen::MatrixXd frame_gram(const ExampleConfig& cfg);

/// Ambient structure: scales components 0..2k-1 by sigma and the rest by
/// sigbar (sigbar = p - sigma). k must be in 0..n.
Eigen::VectorXd ambient_j_apply(const Eigen::VectorXd& v, int k,
                                const MetallicParams& params);

/// The corresponding 2n x 2n matrix.
Eigen::MatrixXd ambient_j_matrix(int n, int k, const MetallicParams& params);

/// Variant with the constant sigbar replaced by 1 - sigma. For p = 1 the
/// two coincide; for p >= 2 the result is not metallic (reported as a
/// documented discrepancy by the suites).
Eigen::MatrixXd ambient_j_matrix_sigbar_one_minus(int n, int k,
                                                  const MetallicParams& params);

/// cos of the angle between J Z_0 and Z_0:
///   (k sigma + (n-k) sigbar) / sqrt(n (k sigma^2 + (n-k) sigbar^2)).
double slant_cosine(int n, int k, const MetallicParams& params);

/// The same angle computed from the frame and ambient structure directly;
/// the two agree to roundoff.
double slant_cosine_direct(const ExampleConfig& cfg);

/// Max |<J Z_0, Z_i>| over i = 1..n; zero (J Z_0 stays orthogonal to the
/// span of the Z_i).
double jz0_span_orthogonality(const ExampleConfig& cfg);

/// The immersion as parsed expressions over (u, a1..an); 2n components.
std::vector<Expression> immersion_components(int n);

/// Pullback of the ambient Euclidean metric through the immersion at the
/// configured point, computed from jets of the immersion components.
Eigen::MatrixXd pullback_metric(const ExampleConfig& cfg);

/// base (u > 0, metric n du^2) x_u fiber (flat n-torus box): the warped
/// product carrying the metric n du^2 + u^2 sum da_i^2.
WarpedProductSpec example_warped_spec(int n);

}  // namespace mwp

#endif  // MWP_GALLERY_HPP
