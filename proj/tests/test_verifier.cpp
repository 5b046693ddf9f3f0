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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mwp/builtins.hpp"
#include "mwp/suites.hpp"

using namespace mwp;

namespace {

const char* kPolarSpec = R"(# polar plane as a warped product
[manifold halfline]
dim = 1
coords = u
domain = u in [0.5, 2.5]
metric = [[1]]

[manifold circle]
dim = 1
coords = alpha
domain = alpha in [0.1, 6.1]
metric = [[1]]

[warp]
base = halfline
fiber = circle
f = u

[structure J1]
chart = halfline
p = 1
q = 1
entries = [[sigma]]

[suite oracle-selfcheck]
flat = warped
)";

SpecFile load_builtin_spec(const std::string& src) {
  return parse_spec_text(builtin_spec_text(src), src);
}

std::map<std::string, CheckRecord> by_id(const VerificationReport& r) {
  std::map<std::string, CheckRecord> out;
  for (const auto& rec : r.records()) out[rec.check_id] = rec;
  return out;
}

}  // namespace

TEST_CASE("spec parsing") {
  const SpecFile spec = parse_spec_text(kPolarSpec, "test");
  CHECK(spec.charts.count("halfline") == 1);
  CHECK(spec.charts.count("warped") == 1);
  CHECK(spec.warp.has_value());
  CHECK(spec.warp->n() == 1);
  CHECK(spec.warp->m() == 1);
  CHECK(spec.structures.count("J1") == 1);
  CHECK(spec.suites.size() == 1);
  CHECK(spec.suites[0].name == "oracle-selfcheck");
  CHECK(spec.suites[0].options.at("flat") == "warped");
}

TEST_CASE("map sections resolve and behave as metallic maps") {
  const std::string text = std::string(kPolarSpec) +
                           "\n[structure J2]\nchart = circle\np = 1\nq = 1\n"
                           "entries = [[sigma]]\n"
                           "\n[map p1]\nsource = warped\ntarget = halfline\n"
                           "components = [u]\n";
  const SpecFile spec = parse_spec_text(text, "map-test");
  REQUIRE(spec.maps.count("p1") == 1);
  const MetallicParams mp = MetallicParams::make(1, 1);
  // the pairwise product structure makes the projection a metallic map
  const LinearOperatorField pairwise = assemble_pair_field(
      spec.warp_spec(), spec.structure("J1").field,
      spec.structure("J2").field);
  CHECK(metallic_map_residual(spec.maps.at("p1"), pairwise,
                              spec.structure("J1").field, mp, 11,
                              "verifier/map", 10) <= 1e-12);
  // dangling source chart
  CHECK_THROWS_AS(
      parse_spec_text(std::string(kPolarSpec) +
                          "\n[map bad]\nsource = nowhere\ntarget = halfline\n"
                          "components = [u]\n",
                      "map-bad"),
      ReferenceError);
}

TEST_CASE("spec parse errors carry location") {
  // unbalanced metric row
  const char* bad1 =
      "[manifold m]\ndim = 2\ncoords = x, y\n"
      "domain = x in [0, 1], y in [0, 1]\nmetric = [[1, 0], [0, 1]\n";
  CHECK_THROWS_AS(parse_spec_text(bad1, "bad1"), ParseError);
  try {
    parse_spec_text(bad1, "bad1");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad1:5") != std::string::npos);
  }

  // expression error inside the metric names section/key/offset
  const char* bad2 =
      "[manifold m]\ndim = 1\ncoords = x\ndomain = x in [0, 1]\n"
      "metric = [[1 + ]]\n";
  try {
    parse_spec_text(bad2, "bad2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad2:5") != std::string::npos);
    CHECK(msg.find("metric") != std::string::npos);
    CHECK(msg.find("offset") != std::string::npos);
  }

  // dangling reference
  const char* bad3 =
      "[manifold m]\ndim = 1\ncoords = x\ndomain = x in [0, 1]\n"
      "metric = [[1]]\n\n[structure S]\nchart = M3\nentries = [[1]]\n";
  CHECK_THROWS_AS(parse_spec_text(bad3, "bad3"), ReferenceError);

  // empty domain interval
  const char* bad4 =
      "[manifold m]\ndim = 1\ncoords = x\ndomain = x in [2, 1]\n"
      "metric = [[1]]\n";
  CHECK_THROWS_AS(parse_spec_text(bad4, "bad4"), ParseError);

  // dim mismatch
  const char* bad5 =
      "[manifold m]\ndim = 3\ncoords = x, y\n"
      "domain = x in [0, 1], y in [0, 1]\nmetric = [[1, 0], [0, 1]]\n";
  CHECK_THROWS_AS(parse_spec_text(bad5, "bad5"), ParseError);
}

TEST_CASE("report rendering and verdict rule") {
  VerificationReport r;
  r.add_check("b/second", "s", 10, 1e-9, 1e-8);
  r.add_check("a/first", "s", 5, 2e-8, 1e-8, "too big");
  r.add_skip("c/third", "s", "m > 1 required");
  r.finalize();
  CHECK(r.records()[0].check_id == "a/first");  // sorted
  CHECK(r.records()[0].verdict == Verdict::Fail);
  CHECK(r.records()[1].verdict == Verdict::Pass);
  CHECK(r.records()[2].verdict == Verdict::Skipped);
  CHECK(r.pass_count() == 1);
  CHECK(r.fail_count() == 1);
  CHECK(r.skip_count() == 1);

  const std::string json = r.to_json();
  CHECK(json.find("\"check_id\": \"a/first\"") != std::string::npos);
  CHECK(json.find("\"verdict\": \"fail\"") != std::string::npos);
  CHECK(json.find("1.0000000000000001e-09") != std::string::npos);  // 17 digits
  const std::string text = r.to_text();
  CHECK(text.find("3 checks: 1 pass, 1 fail, 1 skipped") != std::string::npos);

  // empty report
  VerificationReport empty;
  CHECK(empty.to_json() == "[]\n");
  CHECK(empty.to_text().find("0 checks") != std::string::npos);
}

TEST_CASE("builtin registry") {
  CHECK(is_builtin_source("builtin:sphere"));
  CHECK(!is_builtin_source("sphere.spec"));
  CHECK_THROWS_AS(builtin_spec_text("builtin:nope"), ReferenceError);
  CHECK_THROWS_AS(builtin_spec_text("builtin:example3?n=99"), DomainError);
  for (const std::string& name : builtin_names()) {
    const SpecFile spec = load_builtin_spec("builtin:" + name);
    CHECK(!spec.suites.empty());
  }
}

TEST_CASE("suites run green on their builtins") {
  RunOptions opt;
  opt.seed = 42;
  opt.samples = 12;
  for (const char* src :
       {"builtin:algebra?p_max=2&q_max=2", "builtin:sphere",
        "builtin:hyperbolic-plane", "builtin:flat-charts",
        "builtin:polar-plane", "builtin:hyperbolic3",
        "builtin:sphere-x-line", "builtin:sphere-x-hyperbolic",
        "builtin:flatwarp-aligned", "builtin:example3?n=2&k=1"}) {
    const SpecFile spec = load_builtin_spec(src);
    const VerificationReport r = run_suites(spec, {}, opt);
    CAPTURE(src);
    CAPTURE(r.to_text());
    CHECK(r.fail_count() == 0);
    CHECK(r.records().size() >= 1);
  }
}

TEST_CASE("deliberately failing builtins fail honestly") {
  RunOptions opt;
  opt.seed = 42;
  opt.samples = 10;
  {
    const SpecFile spec = load_builtin_spec("builtin:polar-plane-mix");
    const VerificationReport r = run_suites(spec, {}, opt);
    const auto recs = by_id(r);
    CHECK(recs.at("locally-metallic/condition-a").verdict == Verdict::Fail);
    CHECK(recs.at("locally-metallic/direct-nabla").verdict == Verdict::Fail);
    // the equivalence record still passes: both sides agree the structure
    // is not locally metallic
    CHECK(recs.at("locally-metallic/equivalence").verdict == Verdict::Pass);
  }
  {
    const SpecFile spec = load_builtin_spec("builtin:flatwarp-skew");
    const VerificationReport r = run_suites(spec, {}, opt);
    const auto recs = by_id(r);
    CHECK(recs.at("ricci-invariance/hessian-defect").verdict == Verdict::Fail);
    CHECK(recs.at("ricci-invariance/ricci-defect").verdict == Verdict::Fail);
    CHECK(recs.at("ricci-invariance/vertical-pair-symmetry").verdict ==
          Verdict::Pass);
    CHECK(recs.at("ricci-invariance/equivalence").verdict == Verdict::Pass);
    CHECK(recs.at("locally-metallic/equivalence").verdict == Verdict::Pass);
  }
}

TEST_CASE("lemma suites skip on one-dimensional fibers") {
  RunOptions opt;
  opt.seed = 1;
  opt.samples = 8;
  const SpecFile spec = load_builtin_spec("builtin:polar-plane");
  const VerificationReport r = run_suites(spec, {"lemma-curvature",
                                                 "lemma-ricci"}, opt);
  const auto recs = by_id(r);
  CHECK(recs.at("lemma-curvature/case2").verdict == Verdict::Skipped);
  CHECK(recs.at("lemma-curvature/case4").verdict == Verdict::Skipped);
  CHECK(recs.at("lemma-curvature/case5").verdict == Verdict::Skipped);
  CHECK(recs.at("lemma-curvature/case1-m1").verdict == Verdict::Pass);
  CHECK(recs.at("lemma-curvature/case3-m1").verdict == Verdict::Pass);
  CHECK(recs.at("lemma-ricci/case1").verdict == Verdict::Skipped);
  CHECK(r.fail_count() == 0);
}

TEST_CASE("proposition suite separates the quadratic coefficient orders") {
  RunOptions opt;
  opt.seed = 9;
  opt.samples = 15;
  {
    const SpecFile spec = load_builtin_spec("builtin:sphere-x-line?p=1&q=1");
    const auto recs = by_id(run_suites(spec, {"proposition-identities"}, opt));
    CHECK(recs.at("proposition-identities/eq2.11-corrected").verdict ==
          Verdict::Pass);
    CHECK(recs.at("proposition-identities/eq2.11-literal").verdict ==
          Verdict::Pass);
    CHECK(recs.at("proposition-identities/eq2.12").verdict == Verdict::Pass);
  }
  {
    const SpecFile spec = load_builtin_spec("builtin:sphere-x-line?p=2&q=1");
    const auto recs = by_id(run_suites(spec, {"proposition-identities"}, opt));
    CHECK(recs.at("proposition-identities/eq2.11-corrected").verdict ==
          Verdict::Pass);
    // the refutation record passes because the literal form failed
    const CheckRecord& lit =
        recs.at("proposition-identities/eq2.11-literal-deviates");
    CHECK(lit.verdict == Verdict::Pass);
    CHECK(lit.note.find("observed") != std::string::npos);
  }
}

TEST_CASE("reports are deterministic and residuals monotone in samples") {
  for (const char* src : {"builtin:polar-plane", "builtin:hyperbolic3"}) {
    RunOptions opt;
    opt.seed = 77;
    opt.samples = 10;
    const SpecFile s1 = load_builtin_spec(src);
    const SpecFile s2 = load_builtin_spec(src);
    const std::string j1 = run_suites(s1, {}, opt).to_json();
    const std::string j2 = run_suites(s2, {}, opt).to_json();
    CHECK(j1 == j2);

    // nested sample sets: residual can only grow with more samples
    RunOptions opt2 = opt;
    opt2.samples = 25;
    const auto small = by_id(run_suites(s1, {}, opt));
    const auto large = by_id(run_suites(s1, {}, opt2));
    int compared = 0;
    for (const auto& [id, rec] : small) {
      auto it = large.find(id);
      if (it == large.end() || rec.verdict == Verdict::Skipped) continue;
      if (rec.samples != it->second.samples) {
        CHECK(it->second.max_residual >= rec.max_residual - 1e-18);
        ++compared;
      }
    }
    CHECK(compared > 5);
  }
}

TEST_CASE("unknown suite and missing sections") {
  RunOptions opt;
  const SpecFile spec = parse_spec_text(kPolarSpec, "test");
  CHECK_THROWS_AS(run_suites(spec, {"no-such-suite"}, opt), DomainError);

  // requesting a suite the spec cannot support yields a failed
  // precondition record, not a crash
  const SpecFile bare = load_builtin_spec("builtin:sphere");
  const VerificationReport r = run_suites(bare, {"lemma-curvature"}, opt);
  CHECK(r.fail_count() == 1);
  CHECK(r.records()[0].check_id == "lemma-curvature/precondition");
}

TEST_CASE("tolerance overrides") {
  Tolerances tol;
  CHECK(tol.set("oracle-curvature", 1e-6));
  CHECK(tol.curvature == 1e-6);
  CHECK(tol.set("algebraic", 1e-10));
  CHECK(!tol.set("bogus", 1.0));

  // loosening the curvature tolerance flips a failing record to pass
  RunOptions opt;
  opt.seed = 5;
  opt.samples = 8;
  const SpecFile spec = load_builtin_spec("builtin:flatwarp-skew");
  RunOptions loose = opt;
  loose.tol.curvature = 1e6;
  loose.tol.selfcheck = 1e6;
  const VerificationReport r = run_suites(spec, {"ricci-invariance"}, loose);
  CHECK(r.fail_count() == 0);
}
