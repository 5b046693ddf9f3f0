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

// Batch verification front door. Thin shell over the C API in mwp.h:
//   mwp verify --spec <file|builtin:name> [--suite s]... [--seed N]
//              [--samples N] [--tol key=val]... [--format text|json]
//              [--out path]
//   mwp list-suites
// Exit codes: 0 all checks pass or skip, 1 any check fails, 2 usage or
// spec errors.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwp.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int die(const std::string& msg) {
  std::cerr << "mwp: " << msg << "\n";
  return kExitUsage;
}

struct SessionGuard {
  mwp_session* s = nullptr;
  ~SessionGuard() { mwp_session_close(s); }
};

struct ReportGuard {
  mwp_report* r = nullptr;
  ~ReportGuard() { mwp_report_free(r); }
};

int run_verify(const std::string& spec, const std::vector<std::string>& suites,
               std::uint64_t seed, int samples,
               const std::vector<std::string>& tols, const std::string& format,
               const std::string& out_path) {
  SessionGuard session;
  if (mwp_session_open(spec.c_str(), &session.s) != MWP_OK)
    return die(mwp_last_error());

  for (const std::string& kv : tols) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      return die("--tol expects key=value, got '" + kv + "'");
    char* end = nullptr;
    const double value = std::strtod(kv.c_str() + eq + 1, &end);
    if (end == kv.c_str() + eq + 1 || *end != '\0')
      return die("--tol '" + kv + "' has a malformed value");
    if (mwp_session_set_tolerance(session.s, kv.substr(0, eq).c_str(),
                                  value) != MWP_OK)
      return die(mwp_last_error());
  }

  std::string joined;
  for (const std::string& s : suites) {
    if (!joined.empty()) joined += ",";
    joined += s;
  }

  ReportGuard report;
  if (mwp_run_suites(session.s, joined.empty() ? nullptr : joined.c_str(),
                     seed, samples, &report.r) != MWP_OK)
    return die(mwp_last_error());

  char* rendered = nullptr;
  const mwp_format fmt =
      format == "json" ? MWP_FORMAT_JSON : MWP_FORMAT_TEXT;
  if (mwp_report_render(report.r, fmt, &rendered) != MWP_OK)
    return die(mwp_last_error());

  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      mwp_string_free(rendered);
      return die("cannot write '" + out_path + "'");
    }
    out << rendered;
  }
  mwp_string_free(rendered);

  return mwp_report_fail_count(report.r) > 0 ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metallic warped-product verification engine"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  std::string spec;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  int samples = 30;
  std::vector<std::string> tols;
  std::string format = "text";
  std::string out_path;

  CLI::App* verify = app.add_subcommand("verify", "load a spec and run suites");
  verify->add_option("--spec", spec,
                     "spec file path or builtin:<name>[?k=v&...]")
      ->required();
  verify->add_option("--suite", suites,
                     "suite to run (repeatable; default: all listed in the "
                     "spec)");
  verify->add_option("--seed", seed, "sampling seed (default 0)");
  verify->add_option("--samples", samples, "samples per check (default 30)");
  verify->add_option("--tol", tols,
                     "tolerance override key=value (keys: algebraic, "
                     "conjugation, oracle-selfcheck, oracle-curvature, fd)");
  verify->add_option("--format", format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out_path, "write the report to a file");

  CLI::App* list = app.add_subcommand("list-suites", "print suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << "mwp: " << e.what() << "\n";
    return kExitUsage;
  }

  if (list->parsed()) {
    std::cout << mwp_suite_names() << "\n";
    return kExitPass;
  }
  return run_verify(spec, suites, seed, samples, tols, format, out_path);
}
