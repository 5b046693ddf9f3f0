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

#include "mwp/builtins.hpp"

#include <cstdlib>
#include <map>

#include "mwp/common.hpp"

namespace mwp {

namespace {

constexpr const char* kPrefix = "builtin:";

struct Params {
  std::map<std::string, std::string> kv;

  int get_int(const std::string& key, int def, int lo, int hi) const {
    auto it = kv.find(key);
    if (it == kv.end()) return def;
    const int v = std::atoi(it->second.c_str());
    if (v < lo || v > hi)
      throw DomainError("builtin parameter " + key + "=" + it->second +
                        " out of range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    return v;
  }
};

std::string sphere_manifold() {
  return "[manifold sphere]\n"
         "dim = 2\n"
         "coords = theta, phi\n"
         "domain = theta in [0.4, 2.7], phi in [0.1, 6.1]\n"
         "metric = [[1, 0], [0, sin(theta)^2]]\n";
}

std::string hplane_manifold() {
  return "[manifold hplane]\n"
         "dim = 2\n"
         "coords = t, x\n"
         "domain = t in [-0.7, 0.7], x in [-1, 1]\n"
         "metric = [[1, 0], [0, exp(2*t)]]\n";
}

std::string line_manifold(const char* name, const char* coord) {
  return std::string("[manifold ") + name + "]\n" +
         "dim = 1\n"
         "coords = " + coord + "\n" +
         "domain = " + coord + " in [-1, 1]\n" +
         "metric = [[1]]\n";
}

std::string flat2_manifold(const char* name, const char* c0, const char* c1) {
  return std::string("[manifold ") + name + "]\n" +
         "dim = 2\n"
         "coords = " + c0 + ", " + c1 + "\n" +
         "domain = " + c0 + " in [-0.8, 0.8], " + c1 + " in [-0.8, 0.8]\n" +
         "metric = [[1, 0], [0, 1]]\n";
}

std::string pq_lines(int p, int q) {
  return "p = " + std::to_string(p) + "\nq = " + std::to_string(q) + "\n";
}

std::string gen_algebra(const Params& ps) {
  const int p_max = ps.get_int("p_max", 5, 1, 9);
  const int q_max = ps.get_int("q_max", 5, 1, 9);
  const int per_dim = ps.get_int("per_dim", 4, 1, 32);
  return "# pointwise metallic algebra battery (chartless)\n"
         "[suite metallic-algebra]\n"
         "p_max = " + std::to_string(p_max) + "\n" +
         "q_max = " + std::to_string(q_max) + "\n" +
         "per_dim = " + std::to_string(per_dim) + "\n";
}

std::string gen_sphere(const Params&) {
  return "# unit round sphere: K = +1, S = g\n" + sphere_manifold() +
         "\n[suite oracle-selfcheck]\n"
         "sectional = sphere: 1\n"
         "einstein = sphere: 1\n";
}

std::string gen_hyperbolic_plane(const Params&) {
  return "# hyperbolic plane: S = -g\n" + hplane_manifold() +
         "\n[suite oracle-selfcheck]\n"
         "einstein = hplane: -1\n";
}

std::string gen_flat_charts(const Params&) {
  return "# the flat plane in Cartesian and polar coordinates\n"
         "[manifold cart]\n"
         "dim = 2\n"
         "coords = x, y\n"
         "domain = x in [-2, 2], y in [-2, 2]\n"
         "metric = [[1, 0], [0, 1]]\n"
         "\n"
         "[manifold polar]\n"
         "dim = 2\n"
         "coords = u, alpha\n"
         "domain = u in [0.5, 2.5], alpha in [0.1, 6.1]\n"
         "metric = [[1, 0], [0, u^2]]\n"
         "\n"
         "[suite oracle-selfcheck]\n"
         "flat = cart, polar\n";
}

std::string gen_polar_plane(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# flat plane assembled as halfline x_u circle\n"
         "[manifold halfline]\n"
         "dim = 1\n"
         "coords = u\n"
         "domain = u in [0.5, 2.5]\n"
         "metric = [[1]]\n"
         "\n"
         "[manifold circle]\n"
         "dim = 1\n"
         "coords = alpha\n"
         "domain = alpha in [0.1, 6.1]\n"
         "metric = [[1]]\n"
         "\n"
         "[warp]\n"
         "base = halfline\n"
         "fiber = circle\n"
         "f = u\n"
         "\n"
         "[structure Jplus]\n"
         "induced = plus\n" + pq_lines(p, q) +
         "\n"
         "[structure J1sigma]\n"
         "chart = halfline\n" + pq_lines(p, q) +
         "entries = [[sigma]]\n"
         "\n"
         "[structure J2sigma]\n"
         "chart = circle\n" + pq_lines(p, q) +
         "entries = [[sigma]]\n"
         "\n"
         "[suite oracle-selfcheck]\n"
         "flat = warped\n"
         "\n[suite warped-connection]\n"
         "\n[suite lemma-curvature]\n"
         "\n[suite lemma-ricci]\n"
         "\n[suite locally-metallic]\n"
         "j1 = J1sigma\n"
         "j2 = J2sigma\n"
         "\n[suite fiber-invariance]\n"
         "structure = Jplus\n";
}

std::string gen_polar_plane_mix(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# deliberately failing structure pair on a genuine warp:\n"
         "# sigma on the base against sigbar on the fiber\n"
         "[manifold halfline]\n"
         "dim = 1\n"
         "coords = u\n"
         "domain = u in [0.5, 2.5]\n"
         "metric = [[1]]\n"
         "\n"
         "[manifold circle]\n"
         "dim = 1\n"
         "coords = alpha\n"
         "domain = alpha in [0.1, 6.1]\n"
         "metric = [[1]]\n"
         "\n"
         "[warp]\n"
         "base = halfline\n"
         "fiber = circle\n"
         "f = u\n"
         "\n"
         "[structure J1sigma]\n"
         "chart = halfline\n" + pq_lines(p, q) +
         "entries = [[sigma]]\n"
         "\n"
         "[structure J2sigbar]\n"
         "chart = circle\n" + pq_lines(p, q) +
         "entries = [[sigbar]]\n"
         "\n"
         "[suite locally-metallic]\n"
         "j1 = J1sigma\n"
         "j2 = J2sigbar\n";
}

std::string gen_hyperbolic3(const Params&) {
  return "# R x_{e^t} R^2: hyperbolic 3-space, constant curvature -1\n"
         "[manifold tline]\n"
         "dim = 1\n"
         "coords = t\n"
         "domain = t in [-0.7, 0.7]\n"
         "metric = [[1]]\n"
         "\n" +
         flat2_manifold("plane", "x", "y") +
         "\n"
         "[warp]\n"
         "base = tline\n"
         "fiber = plane\n"
         "f = exp(t)\n"
         "\n"
         "[suite oracle-selfcheck]\n"
         "sectional = warped: -1\n"
         "einstein = warped: -2\n"
         "\n[suite warped-connection]\n"
         "\n[suite lemma-curvature]\n"
         "certify_constant_curvature = -1\n"
         "\n[suite lemma-ricci]\n";
}

std::string gen_sphere_x_line(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# plain product sphere x line\n" + sphere_manifold() + "\n" +
         line_manifold("line", "s") +
         "\n"
         "[warp]\n"
         "base = sphere\n"
         "fiber = line\n"
         "f = 1\n"
         "\n"
         "[structure Jplus]\n"
         "induced = plus\n" + pq_lines(p, q) +
         "\n"
         "[suite oracle-selfcheck]\n"
         "sectional = sphere: 1\n"
         "\n[suite product-case]\n"
         "\n[suite proposition-identities]\n"
         "structure = Jplus\n"
         "n_max = 8\n";
}

std::string gen_sphere_x_hyperbolic(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# plain product of Einstein factors with opposite signs\n" +
         sphere_manifold() + "\n" + hplane_manifold() +
         "\n"
         "[warp]\n"
         "base = sphere\n"
         "fiber = hplane\n"
         "f = 1\n"
         "\n"
         "[structure J1sigma]\n"
         "chart = sphere\n" + pq_lines(p, q) +
         "entries = [[sigma, 0], [0, sigma]]\n"
         "\n"
         "[structure J2sigbar]\n"
         "chart = hplane\n" + pq_lines(p, q) +
         "entries = [[sigbar, 0], [0, sigbar]]\n"
         "\n"
         "[suite product-case]\n"
         "\n[suite ricci-invariance]\n"
         "j1 = J1sigma\n"
         "j2 = J2sigbar\n"
         "\n[suite locally-metallic]\n"
         "j1 = J1sigma\n"
         "j2 = J2sigbar\n";
}

std::string flatwarp_common(const char* f_line, int p, int q) {
  return std::string(
             "[manifold plane_ts]\n"
             "dim = 2\n"
             "coords = t, s\n"
             "domain = t in [-0.8, 0.8], s in [-0.8, 0.8]\n"
             "metric = [[1, 0], [0, 1]]\n"
             "\n") +
         flat2_manifold("plane_xy", "x", "y") +
         "\n"
         "[warp]\n"
         "base = plane_ts\n"
         "fiber = plane_xy\n" +
         f_line +
         "\n"
         "[structure J1diag]\n"
         "chart = plane_ts\n" + pq_lines(p, q) +
         "entries = [[sigma, 0], [0, sigbar]]\n"
         "\n"
         "[structure J2sigma]\n"
         "chart = plane_xy\n" + pq_lines(p, q) +
         "entries = [[sigma, 0], [0, sigma]]\n"
         "\n"
         "[suite locally-metallic]\n"
         "j1 = J1diag\n"
         "j2 = J2sigma\n"
         "\n[suite ricci-invariance]\n"
         "j1 = J1diag\n"
         "j2 = J2sigma\n"
         "\n[suite fiber-invariance]\n"
         "j1 = J1diag\n"
         "j2 = J2sigma\n";
}

std::string gen_flatwarp_aligned(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# grad f^2 is a sigma-eigenvector of J1: locally metallic warp\n" +
         flatwarp_common("f = exp(t)\n", p, q) +
         "\n[suite warped-connection]\n"
         "\n[suite lemma-curvature]\n"
         "\n[suite lemma-ricci]\n";
}

std::string gen_flatwarp_skew(const Params& ps) {
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);
  return "# f = exp(t+s): grad f^2 is not a J1 eigenvector, the Hessian of f\n"
         "# does not commute with J1, and the locally-metallic and\n"
         "# Ricci-invariance suites fail by design\n" +
         flatwarp_common("f = exp(t + s)\n", p, q);
}

std::string gen_example3(const Params& ps) {
  const int n = ps.get_int("n", 2, 1, 6);
  const int k = ps.get_int("k", 1, 0, n);
  const int p = ps.get_int("p", 1, 1, 9);
  const int q = ps.get_int("q", 1, 1, 9);

  std::string coords, domain, metric = "[";
  for (int i = 1; i <= n; ++i) {
    coords += (i > 1 ? ", a" : "a") + std::to_string(i);
    domain += (i > 1 ? ", a" : "a") + std::to_string(i) + " in [0.1, 1.4708]";
    metric += (i > 1 ? ", [" : "[");
    for (int j = 1; j <= n; ++j)
      metric += (j > 1 ? ", " : "") + std::string(i == j ? "1" : "0");
    metric += "]";
  }
  metric += "]";

  std::string text =
      "# the worked example: frame, slant angle and warped metric\n"
      "[manifold ray]\n"
      "dim = 1\n"
      "coords = u\n"
      "domain = u in [0.5, 2.5]\n"
      "metric = [[" + std::to_string(n) + "]]\n"
      "\n"
      "[manifold angles]\n"
      "dim = " + std::to_string(n) + "\n" +
      "coords = " + coords + "\n" +
      "domain = " + domain + "\n" +
      "metric = " + metric + "\n" +
      "\n"
      "[warp]\n"
      "base = ray\n"
      "fiber = angles\n"
      "f = u\n"
      "\n"
      "[suite example3]\n"
      "n = " + std::to_string(n) + "\n" +
      "k = " + std::to_string(k) + "\n" + pq_lines(p, q) +
      "\n[suite warped-connection]\n"
      "\n[suite lemma-curvature]\n"
      "\n[suite lemma-ricci]\n";
  if (n == 1)
    text += "\n[suite oracle-selfcheck]\nflat = warped\n";
  else
    text += "\n[suite oracle-selfcheck]\n";
  return text;
}

using Generator = std::string (*)(const Params&);

const std::map<std::string, Generator>& registry() {
  static const std::map<std::string, Generator> reg = {
      {"algebra", gen_algebra},
      {"sphere", gen_sphere},
      {"hyperbolic-plane", gen_hyperbolic_plane},
      {"flat-charts", gen_flat_charts},
      {"polar-plane", gen_polar_plane},
      {"polar-plane-mix", gen_polar_plane_mix},
      {"hyperbolic3", gen_hyperbolic3},
      {"sphere-x-line", gen_sphere_x_line},
      {"sphere-x-hyperbolic", gen_sphere_x_hyperbolic},
      {"flatwarp-aligned", gen_flatwarp_aligned},
      {"flatwarp-skew", gen_flatwarp_skew},
      {"example3", gen_example3},
  };
  return reg;
}

}  // namespace

bool is_builtin_source(const std::string& source) {
  return source.rfind(kPrefix, 0) == 0;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, gen] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::string builtin_spec_text(const std::string& source) {
  if (!is_builtin_source(source))
    throw ReferenceError("not a builtin source: '" + source + "'");
  std::string rest = source.substr(std::string(kPrefix).size());
  Params ps;
  const std::size_t qm = rest.find('?');
  if (qm != std::string::npos) {
    std::string query = rest.substr(qm + 1);
    rest = rest.substr(0, qm);
    std::size_t pos = 0;
    while (pos <= query.size()) {
      const std::size_t amp = query.find('&', pos);
      const std::string pair =
          query.substr(pos, amp == std::string::npos ? std::string::npos
                                                     : amp - pos);
      if (!pair.empty()) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos)
          throw DomainError("malformed builtin query parameter '" + pair +
                            "'");
        ps.kv[pair.substr(0, eq)] = pair.substr(eq + 1);
      }
      if (amp == std::string::npos) break;
      pos = amp + 1;
    }
  }
  const auto it = registry().find(rest);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : builtin_names()) known += " " + n;
    throw ReferenceError("unknown builtin '" + rest + "'; available:" + known);
  }
  return it->second(ps);
}

}  // namespace mwp
