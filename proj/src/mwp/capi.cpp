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

#include "mwp.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>

#include "mwp/builtins.hpp"
#include "mwp/suites.hpp"

struct mwp_session {
  mwp::SpecFile spec;
  mwp::Tolerances tolerances;
};

struct mwp_report {
  mwp::VerificationReport report;
};

namespace {

thread_local std::string t_last_error;

void clear_error() { t_last_error.clear(); }

mwp_status set_error(mwp_status code, const std::string& msg) {
  t_last_error = msg;
  return code;
}

mwp_status translate(const std::exception& e) {
  if (dynamic_cast<const mwp::ParseError*>(&e))
    return set_error(MWP_ERR_PARSE, e.what());
  if (dynamic_cast<const mwp::ReferenceError*>(&e))
    return set_error(MWP_ERR_REFERENCE, e.what());
  if (dynamic_cast<const mwp::DomainError*>(&e))
    return set_error(MWP_ERR_DOMAIN, e.what());
  if (dynamic_cast<const mwp::Error*>(&e))
    return set_error(MWP_ERR_IO, e.what());
  return set_error(MWP_ERR_INTERNAL, e.what());
}

std::vector<std::string> split_names(const char* csv) {
  std::vector<std::string> out;
  if (csv == nullptr) return out;
  std::string cur;
  for (const char* p = csv;; ++p) {
    if (*p == ',' || *p == '\0') {
      std::size_t b = 0, e = cur.size();
      while (b < e && cur[b] == ' ') ++b;
      while (e > b && cur[e - 1] == ' ') --e;
      const std::string name = cur.substr(b, e - b);
      if (!name.empty() &&
          std::find(out.begin(), out.end(), name) == out.end())
        out.push_back(name);
      cur.clear();
      if (*p == '\0') break;
    } else {
      cur += *p;
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* mwp_version(void) { return "1.0.0"; }

const char* mwp_last_error(void) { return t_last_error.c_str(); }

mwp_status mwp_session_open(const char* source, mwp_session** out) {
  clear_error();
  if (source == nullptr || out == nullptr)
    return set_error(MWP_ERR_USAGE, "source and out must be non-null");
  *out = nullptr;
  try {
    auto session = std::make_unique<mwp_session>();
    if (mwp::is_builtin_source(source))
      session->spec =
          mwp::parse_spec_text(mwp::builtin_spec_text(source), source);
    else
      session->spec = mwp::load_spec(source);
    *out = session.release();
    return MWP_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

mwp_status mwp_session_open_text(const char* text, const char* name,
                                 mwp_session** out) {
  clear_error();
  if (text == nullptr || out == nullptr)
    return set_error(MWP_ERR_USAGE, "text and out must be non-null");
  *out = nullptr;
  try {
    auto session = std::make_unique<mwp_session>();
    session->spec =
        mwp::parse_spec_text(text, name ? name : "<memory>");
    *out = session.release();
    return MWP_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void mwp_session_close(mwp_session* session) { delete session; }

mwp_status mwp_session_set_tolerance(mwp_session* session, const char* key,
                                     double value) {
  clear_error();
  if (session == nullptr || key == nullptr)
    return set_error(MWP_ERR_USAGE, "session and key must be non-null");
  if (!(value > 0.0))
    return set_error(MWP_ERR_USAGE, "tolerance must be positive");
  if (!session->tolerances.set(key, value))
    return set_error(MWP_ERR_USAGE,
                     std::string("unknown tolerance key '") + key +
                         "'; known: algebraic, conjugation, "
                         "oracle-selfcheck, oracle-curvature, fd");
  return MWP_OK;
}

mwp_status mwp_run_suites(mwp_session* session, const char* suites,
                          uint64_t seed, int samples, mwp_report** out) {
  clear_error();
  if (session == nullptr || out == nullptr)
    return set_error(MWP_ERR_USAGE, "session and out must be non-null");
  *out = nullptr;
  try {
    mwp::RunOptions options;
    options.seed = seed;
    options.samples = samples > 0 ? samples : 30;
    options.tol = session->tolerances;
    auto report = std::make_unique<mwp_report>();
    report->report =
        mwp::run_suites(session->spec, split_names(suites), options);
    *out = report.release();
    return MWP_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

int mwp_report_size(const mwp_report* report) {
  return report ? static_cast<int>(report->report.records().size()) : 0;
}

int mwp_report_pass_count(const mwp_report* report) {
  return report ? report->report.pass_count() : 0;
}

int mwp_report_fail_count(const mwp_report* report) {
  return report ? report->report.fail_count() : 0;
}

int mwp_report_skip_count(const mwp_report* report) {
  return report ? report->report.skip_count() : 0;
}

mwp_status mwp_report_record(const mwp_report* report, int index,
                             mwp_check* out) {
  clear_error();
  if (report == nullptr || out == nullptr)
    return set_error(MWP_ERR_USAGE, "report and out must be non-null");
  const auto& records = report->report.records();
  if (index < 0 || static_cast<std::size_t>(index) >= records.size())
    return set_error(MWP_ERR_USAGE, "record index out of range");
  const mwp::CheckRecord& r = records[static_cast<std::size_t>(index)];
  out->check_id = r.check_id.c_str();
  out->suite = r.suite.c_str();
  out->verdict = mwp::verdict_name(r.verdict);
  out->note = r.note.c_str();
  out->samples = r.samples;
  out->max_residual = r.max_residual;
  out->tolerance = r.tolerance;
  return MWP_OK;
}

mwp_status mwp_report_render(const mwp_report* report, mwp_format format,
                             char** out) {
  clear_error();
  if (report == nullptr || out == nullptr)
    return set_error(MWP_ERR_USAGE, "report and out must be non-null");
  *out = nullptr;
  try {
    const std::string s = format == MWP_FORMAT_JSON
                              ? report->report.to_json()
                              : report->report.to_text();
    char* buf = static_cast<char*>(::operator new(s.size() + 1));
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
    return MWP_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void mwp_string_free(char* s) { ::operator delete(s); }

void mwp_report_free(mwp_report* report) { delete report; }

const char* mwp_suite_names(void) {
  static const std::string names = [] {
    std::string out;
    for (const std::string& n : mwp::suite_names()) {
      if (!out.empty()) out += "\n";
      out += n;
    }
    return out;
  }();
  return names.c_str();
}

const char* mwp_builtin_names(void) {
  static const std::string names = [] {
    std::string out;
    for (const std::string& n : mwp::builtin_names()) {
      if (!out.empty()) out += "\n";
      out += n;
    }
    return out;
  }();
  return names.c_str();
}

}  // extern "C"
