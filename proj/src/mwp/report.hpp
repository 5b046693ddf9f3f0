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

#ifndef MWP_REPORT_HPP
#define MWP_REPORT_HPP

#include <string>
#include <vector>

namespace mwp {

enum class Verdict { Pass, Fail, Skipped };

const char* verdict_name(Verdict v);

struct CheckRecord {
  std::string check_id;
  std::string suite;
  long samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

/// Ordered list of check results. Records are sorted lexicographically by
/// check id regardless of execution order, so reports are byte-identical
/// across runs and parallelism levels.
class VerificationReport {
public:
  /// Pass/fail from residual <= tolerance.
  void add_check(std::string check_id, std::string suite, long samples,
                 double max_residual, double tolerance, std::string note = "");

  void add_skip(std::string check_id, std::string suite, std::string note);

  void merge(VerificationReport other);

  const std::vector<CheckRecord>& records() const { return records_; }

  int pass_count() const;
  int fail_count() const;
  int skip_count() const;

  /// Sorts by check id. Duplicate ids indicate a suite bug.
  void finalize();

  /// Aligned-column rendering with a summary line.
  std::string to_text() const;

  /// JSON array of record objects; reals printed with 17 significant
  /// digits.
  std::string to_json() const;

private:
  std::vector<CheckRecord> records_;
};

}  // namespace mwp

#endif  // MWP_REPORT_HPP
