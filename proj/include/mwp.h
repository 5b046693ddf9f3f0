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

/*
 * C API of the metallic warped-product verification engine.
 *
 * A session wraps one loaded verification spec (a file on disk, inline
 * text, or a named builtin). Running suites produces a report: an ordered
 * list of check records, renderable as aligned text or JSON. Reports are
 * deterministic: the same (spec, suites, seed, samples) yields the same
 * bytes on every run.
 *
 * All functions returning mwp_status set a thread-local error message,
 * readable via mwp_last_error(), when they fail.
 */

#ifndef MWP_H
#define MWP_H

#include <stdint.h>

#ifndef MWP_API
#if defined(_WIN32)
#define MWP_API
#else
#define MWP_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mwp_session mwp_session; /* a loaded, cross-referenced spec */
typedef struct mwp_report mwp_report;   /* a finished verification report */

typedef enum {
  MWP_OK = 0,
  MWP_ERR_IO = 1,        /* unreadable file */
  MWP_ERR_PARSE = 2,     /* malformed spec or expression text */
  MWP_ERR_REFERENCE = 3, /* dangling name (chart, structure, builtin) */
  MWP_ERR_DOMAIN = 4,    /* geometric or numeric precondition violated */
  MWP_ERR_USAGE = 5,     /* null argument, unknown key, bad index */
  MWP_ERR_INTERNAL = 6,
} mwp_status;

typedef enum {
  MWP_FORMAT_TEXT = 0,
  MWP_FORMAT_JSON = 1,
} mwp_format;

/* One check record; string fields point into the report and stay valid
 * until mwp_report_free. */
typedef struct {
  const char* check_id;
  const char* suite;
  const char* verdict; /* "pass" | "fail" | "skipped" */
  const char* note;
  long samples;
  double max_residual;
  double tolerance;
} mwp_check;

MWP_API const char* mwp_version(void);

/* Message of the last failure on the calling thread; empty string when the
 * last call succeeded. Valid until the next API call on this thread. */
MWP_API const char* mwp_last_error(void);

/* source: a spec file path, or "builtin:<name>" with optional query
 * parameters, e.g. "builtin:example3?n=2&k=1&p=1&q=1". */
MWP_API mwp_status mwp_session_open(const char* source, mwp_session** out);

/* Parses spec text from memory; name labels error locations. */
MWP_API mwp_status mwp_session_open_text(const char* text, const char* name,
                                         mwp_session** out);

MWP_API void mwp_session_close(mwp_session* session);

/* Tolerance override, applied to subsequent runs. Keys: "algebraic",
 * "conjugation", "oracle-selfcheck", "oracle-curvature", "fd". */
MWP_API mwp_status mwp_session_set_tolerance(mwp_session* session,
                                             const char* key, double value);

/* Runs suites by name (comma-separated), or every suite listed in the spec
 * when `suites` is NULL or empty. samples <= 0 selects the default (30). */
MWP_API mwp_status mwp_run_suites(mwp_session* session, const char* suites,
                                  uint64_t seed, int samples,
                                  mwp_report** out);

MWP_API int mwp_report_size(const mwp_report* report);
MWP_API int mwp_report_pass_count(const mwp_report* report);
MWP_API int mwp_report_fail_count(const mwp_report* report);
MWP_API int mwp_report_skip_count(const mwp_report* report);

MWP_API mwp_status mwp_report_record(const mwp_report* report, int index,
                                     mwp_check* out);

/* Renders the report; *out is heap-allocated, release it with
 * mwp_string_free. JSON reals carry 17 significant digits. */
MWP_API mwp_status mwp_report_render(const mwp_report* report,
                                     mwp_format format, char** out);

MWP_API void mwp_string_free(char* s);
MWP_API void mwp_report_free(mwp_report* report);

/* Newline-separated registries (static storage, do not free). */
MWP_API const char* mwp_suite_names(void);
MWP_API const char* mwp_builtin_names(void);

#ifdef __cplusplus
}
#endif

#endif /* MWP_H */
