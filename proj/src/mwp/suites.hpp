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

#ifndef MWP_SUITES_HPP
#define MWP_SUITES_HPP

#include "mwp/report.hpp"
#include "mwp/specfile.hpp"

namespace mwp {

/// Tolerance ladder. Keys accepted by set(): algebraic (pure arithmetic
/// identities), conjugation (anything passing through matrix inversion),
/// oracle-selfcheck (tensor pipeline consistency), oracle-curvature
/// (closed form vs oracle equivalence), fd (jet vs finite differences).
struct Tolerances {
  double algebraic = 1e-12;
  double conjugation = 1e-10;
  double selfcheck = 1e-9;
  double curvature = 1e-8;
  double fd = 1e-5;

  bool set(const std::string& key, double value);
};

struct RunOptions {
  std::uint64_t seed = 0;
  int samples = 30;
  Tolerances tol;
};

/// The fixed suite registry.
const std::vector<std::string>& suite_names();

/// Runs one suite request. Precondition failures become failed records;
/// an unknown suite name throws (usage error).
VerificationReport run_suite(const SpecFile& spec, const SuiteRequest& request,
                             const RunOptions& options);

/// Runs the named suites (each may match several labeled requests in the
/// spec; a name with no matching request runs with default options), or all
/// suites listed in the spec when `names` is empty. The result is finalized
/// (sorted by check id).
VerificationReport run_suites(const SpecFile& spec,
                              const std::vector<std::string>& names,
                              const RunOptions& options);

}  // namespace mwp

#endif  // MWP_SUITES_HPP
