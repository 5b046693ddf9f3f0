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

#include "mwp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace mwp {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

void VerificationReport::add_check(std::string check_id, std::string suite,
                                   long samples, double max_residual,
                                   double tolerance, std::string note) {
  CheckRecord r;
  r.check_id = std::move(check_id);
  r.suite = std::move(suite);
  r.samples = samples;
  r.max_residual = max_residual;
  r.tolerance = tolerance;
  r.verdict = max_residual <= tolerance ? Verdict::Pass : Verdict::Fail;
  r.note = std::move(note);
  records_.push_back(std::move(r));
}

void VerificationReport::add_skip(std::string check_id, std::string suite,
                                  std::string note) {
  CheckRecord r;
  r.check_id = std::move(check_id);
  r.suite = std::move(suite);
  r.verdict = Verdict::Skipped;
  r.note = std::move(note);
  records_.push_back(std::move(r));
}

void VerificationReport::merge(VerificationReport other) {
  for (auto& r : other.records_) records_.push_back(std::move(r));
}

int VerificationReport::pass_count() const {
  return static_cast<int>(std::count_if(
      records_.begin(), records_.end(),
      [](const CheckRecord& r) { return r.verdict == Verdict::Pass; }));
}

int VerificationReport::fail_count() const {
  return static_cast<int>(std::count_if(
      records_.begin(), records_.end(),
      [](const CheckRecord& r) { return r.verdict == Verdict::Fail; }));
}

int VerificationReport::skip_count() const {
  return static_cast<int>(std::count_if(
      records_.begin(), records_.end(),
      [](const CheckRecord& r) { return r.verdict == Verdict::Skipped; }));
}

void VerificationReport::finalize() {
  std::sort(records_.begin(), records_.end(),
            [](const CheckRecord& a, const CheckRecord& b) {
              return a.check_id < b.check_id;
            });
  for (std::size_t i = 1; i < records_.size(); ++i)
    if (records_[i].check_id == records_[i - 1].check_id)
      throw std::logic_error("duplicate check id: " + records_[i].check_id);
}

namespace {

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void json_escape(const std::string& s, std::string& out) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

}  // namespace

std::string VerificationReport::to_text() const {
  std::size_t idw = 8;
  for (const auto& r : records_) idw = std::max(idw, r.check_id.size());
  std::string out;
  char line[512];
  std::snprintf(line, sizeof(line), "%-7s  %-*s  %7s  %-13s  %-9s  %s\n",
                "verdict", static_cast<int>(idw), "check_id", "samples",
                "max_residual", "tolerance", "note");
  out += line;
  for (const auto& r : records_) {
    if (r.verdict == Verdict::Skipped) {
      std::snprintf(line, sizeof(line), "%-7s  %-*s  %7s  %-13s  %-9s  %s\n",
                    "SKIP", static_cast<int>(idw), r.check_id.c_str(), "-",
                    "-", "-", r.note.c_str());
    } else {
      std::snprintf(line, sizeof(line),
                    "%-7s  %-*s  %7ld  %-13.4g  %-9.3g  %s\n",
                    r.verdict == Verdict::Pass ? "PASS" : "FAIL",
                    static_cast<int>(idw), r.check_id.c_str(), r.samples,
                    r.max_residual, r.tolerance, r.note.c_str());
    }
    out += line;
  }
  std::snprintf(line, sizeof(line),
                "%zu checks: %d pass, %d fail, %d skipped\n", records_.size(),
                pass_count(), fail_count(), skip_count());
  out += line;
  return out;
}

std::string VerificationReport::to_json() const {
  std::string out = "[";
  bool first = true;
  for (const auto& r : records_) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "  {\"check_id\": \"";
    json_escape(r.check_id, out);
    out += "\", \"suite\": \"";
    json_escape(r.suite, out);
    out += "\", \"samples\": " + std::to_string(r.samples);
    out += ", \"max_residual\": " + real17(r.max_residual);
    out += ", \"tolerance\": " + real17(r.tolerance);
    out += ", \"verdict\": \"";
    out += verdict_name(r.verdict);
    out += "\", \"note\": \"";
    json_escape(r.note, out);
    out += "\"}";
  }
  out += first ? "]\n" : "\n]\n";
  return out;
}

}  // namespace mwp
