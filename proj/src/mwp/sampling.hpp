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

#ifndef MWP_SAMPLING_HPP
#define MWP_SAMPLING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mwp/common.hpp"

namespace mwp {

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, check id, counter), so results are identical across runs, platforms
// and any evaluation order. There is no mutable generator state to share.

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);
std::uint64_t hash_string(const std::string& s);

class CounterRng {
public:
  CounterRng(std::uint64_t seed, const std::string& check_id);

  /// Uniform in [0, 1), keyed by an arbitrary counter tuple.
  double u01(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi, std::uint64_t a, std::uint64_t b = 0,
                 std::uint64_t c = 0) const;

  /// Uniform in [-1, 1).
  double symmetric(std::uint64_t a, std::uint64_t b = 0,
                   std::uint64_t c = 0) const;

  std::uint64_t key() const { return key_; }

private:
  std::uint64_t key_;
};

/// Low-discrepancy point sequence inside a domain box, keyed the same way as
/// CounterRng. Point i is a pure function of (seed, check id, i): an additive
/// Kronecker sequence with per-key offsets, kept a fixed margin inside the
/// box so chart-boundary singularities are never sampled.
class DomainSampler {
public:
  DomainSampler(std::uint64_t seed, const std::string& check_id,
                std::vector<Interval> box, double margin = 1e-6);

  std::size_t dim() const { return box_.size(); }
  std::vector<double> point(std::size_t index) const;

private:
  std::vector<Interval> box_;
  std::vector<double> alpha_;   // Kronecker increments per dimension
  std::vector<double> offset_;  // per-key Cranley-Patterson shifts
  double margin_;
};

}  // namespace mwp

#endif  // MWP_SAMPLING_HPP
