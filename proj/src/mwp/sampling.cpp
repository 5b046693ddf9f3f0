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

#include "mwp/sampling.hpp"

#include <cmath>

namespace mwp {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

CounterRng::CounterRng(std::uint64_t seed, const std::string& check_id)
    : key_(hash_combine(mix64(seed), hash_string(check_id))) {}

double CounterRng::u01(std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) const {
  std::uint64_t h = hash_combine(key_, a);
  h = hash_combine(h, b);
  h = hash_combine(h, c);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi, std::uint64_t a,
                           std::uint64_t b, std::uint64_t c) const {
  return lo + (hi - lo) * u01(a, b, c);
}

double CounterRng::symmetric(std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) const {
  return 2.0 * u01(a, b, c) - 1.0;
}

namespace {

// Positive root of g^(d+1) = g + 1 (the R_d sequence constant).
double harmonious_root(std::size_t d) {
  double g = 1.5;
  for (int it = 0; it < 64; ++it) {
    double p = std::pow(g, static_cast<double>(d + 1)) - g - 1.0;
    double dp = (static_cast<double>(d) + 1.0) *
                    std::pow(g, static_cast<double>(d)) -
                1.0;
    double next = g - p / dp;
    if (std::abs(next - g) < 1e-15) return next;
    g = next;
  }
  return g;
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

DomainSampler::DomainSampler(std::uint64_t seed, const std::string& check_id,
                             std::vector<Interval> box, double margin)
    : box_(std::move(box)), margin_(margin) {
  const std::uint64_t key = hash_combine(mix64(seed), hash_string(check_id));
  const double g = harmonious_root(box_.size());
  double a = 1.0;
  alpha_.resize(box_.size());
  offset_.resize(box_.size());
  for (std::size_t d = 0; d < box_.size(); ++d) {
    a /= g;
    alpha_[d] = a;
    offset_[d] = static_cast<double>(hash_combine(key, d) >> 11) * 0x1.0p-53;
    if (box_[d].length() <= 2.0 * margin_)
      throw DomainError("sampling interval narrower than twice the margin");
  }
}

std::vector<double> DomainSampler::point(std::size_t index) const {
  std::vector<double> x(box_.size());
  for (std::size_t d = 0; d < box_.size(); ++d) {
    double u = frac(offset_[d] + alpha_[d] * static_cast<double>(index + 1));
    double lo = box_[d].lo + margin_;
    double hi = box_[d].hi - margin_;
    x[d] = lo + u * (hi - lo);
  }
  return x;
}

}  // namespace mwp
