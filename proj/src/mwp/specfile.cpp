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

#include "mwp/specfile.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mwp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits at top-level commas, ignoring commas inside (), [].
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

struct Section {
  std::string kind;  // manifold | warp | structure | map | suite
  std::string name;
  int line = 0;
  std::vector<std::pair<std::string, std::string>> entries;  // key, value
  std::map<std::string, int> entry_lines;

  bool has(const std::string& key) const {
    for (const auto& [k, v] : entries)
      if (k == key) return true;
    return false;
  }
  const std::string& get(const std::string& key, const std::string& origin) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    throw ParseError(origin + ":" + std::to_string(line) + ": section [" +
                         kind + " " + name + "] is missing key '" + key + "'",
                     0);
  }
  std::string get_or(const std::string& key, const std::string& def) const {
    for (const auto& [k, v] : entries)
      if (k == key) return v;
    return def;
  }
  int line_of(const std::string& key) const {
    auto it = entry_lines.find(key);
    return it == entry_lines.end() ? line : it->second;
  }
};

class SpecParser {
public:
  SpecParser(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    lex_sections(text);
  }

  SpecFile build() {
    SpecFile spec;
    spec.origin = origin_;
    for (const Section& s : sections_)
      if (s.kind == "manifold") build_manifold(spec, s);
    for (const Section& s : sections_)
      if (s.kind == "warp") build_warp(spec, s);
    for (const Section& s : sections_)
      if (s.kind == "structure") build_structure(spec, s);
    for (const Section& s : sections_)
      if (s.kind == "map") build_map(spec, s);
    for (const Section& s : sections_)
      if (s.kind == "suite") build_suite(spec, s);
    return spec;
  }

private:
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(origin_ + ":" + std::to_string(line) + ": " + msg, 0);
  }

  void lex_sections(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    Section* cur = nullptr;
    while (std::getline(in, raw)) {
      ++lineno;
      const std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(lineno, "unterminated section header");
        const std::string inner = trim(line.substr(1, line.size() - 2));
        std::istringstream hs(inner);
        Section s;
        hs >> s.kind;
        std::string rest;
        std::getline(hs, rest);
        s.name = trim(rest);
        s.line = lineno;
        if (s.kind != "manifold" && s.kind != "warp" && s.kind != "structure" &&
            s.kind != "map" && s.kind != "suite")
          fail(lineno, "unknown section kind '" + s.kind + "'");
        if (s.kind != "warp" && s.name.empty())
          fail(lineno, "section [" + s.kind + "] needs a name");
        sections_.push_back(std::move(s));
        cur = &sections_.back();
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        fail(lineno, "expected 'key = value' or a [section] header");
      if (cur == nullptr) fail(lineno, "key/value outside any section");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail(lineno, "empty key");
      cur->entries.emplace_back(key, value);
      cur->entry_lines.emplace(key, lineno);
    }
  }

  double parse_number(const std::string& s, int line) const {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || !trim(std::string(end)).empty())
      fail(line, "malformed number '" + s + "'");
    return v;
  }

  int parse_int(const std::string& s, int line) const {
    const double v = parse_number(s, line);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) fail(line, "expected integer, got " + s);
    return i;
  }

  Expression parse_expr(const std::string& text, const Section& s,
                        const std::string& key) const {
    try {
      return Expression::parse(text);
    } catch (const ParseError& e) {
      throw ParseError(origin_ + ":" + std::to_string(s.line_of(key)) +
                           ": [" + s.kind + " " + s.name + "] key '" + key +
                           "' offset " + std::to_string(e.offset()) + ": " +
                           e.what(),
                       e.offset(), e.expected());
    }
  }

  // "[[a, b], [c, d]]" -> row-major expressions, square.
  std::vector<Expression> parse_matrix(const Section& s, const std::string& key,
                                       std::size_t dim) const {
    const std::string text = trim(s.get(key, origin_));
    const int line = s.line_of(key);
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      fail(line, "key '" + key + "': expected bracketed rows [[...], ...]");
    const std::vector<std::string> rows =
        split_top(text.substr(1, text.size() - 2));
    if (rows.size() != dim)
      fail(line, "key '" + key + "': expected " + std::to_string(dim) +
                     " rows, got " + std::to_string(rows.size()));
    std::vector<Expression> out;
    out.reserve(dim * dim);
    for (const std::string& row : rows) {
      if (row.size() < 2 || row.front() != '[' || row.back() != ']')
        fail(line, "key '" + key + "': malformed row '" + row + "'");
      const std::vector<std::string> cells =
          split_top(row.substr(1, row.size() - 2));
      if (cells.size() != dim)
        fail(line, "key '" + key + "': expected " + std::to_string(dim) +
                       " columns, got " + std::to_string(cells.size()));
      for (const std::string& cell : cells)
        out.push_back(parse_expr(cell, s, key));
    }
    return out;
  }

  void build_manifold(SpecFile& spec, const Section& s) const {
    if (spec.charts.count(s.name))
      fail(s.line, "duplicate manifold '" + s.name + "'");
    const std::vector<std::string> coords =
        split_top(s.get("coords", origin_));
    if (coords.empty()) fail(s.line, "manifold needs coordinates");
    const int dim = parse_int(s.get("dim", origin_), s.line_of("dim"));
    if (dim != static_cast<int>(coords.size()))
      fail(s.line_of("dim"), "dim = " + std::to_string(dim) + " but " +
                                 std::to_string(coords.size()) +
                                 " coordinates were given");

    // "name in [lo, hi]" per coordinate, in coordinate order.
    const std::vector<std::string> decls = split_top(s.get("domain", origin_));
    const int dline = s.line_of("domain");
    if (decls.size() != coords.size())
      fail(dline, "expected one domain interval per coordinate");
    std::vector<Interval> domain;
    for (std::size_t i = 0; i < decls.size(); ++i) {
      std::istringstream ds(decls[i]);
      std::string cname, kw;
      ds >> cname >> kw;
      std::string rest;
      std::getline(ds, rest);
      rest = trim(rest);
      if (kw != "in" || rest.size() < 2 || rest.front() != '[' ||
          rest.back() != ']')
        fail(dline, "malformed domain '" + decls[i] +
                        "' (expected: <coord> in [lo, hi])");
      if (cname != coords[i])
        fail(dline, "domain order must match coords ('" + cname + "' vs '" +
                        coords[i] + "')");
      const std::vector<std::string> ends =
          split_top(rest.substr(1, rest.size() - 2));
      if (ends.size() != 2) fail(dline, "interval needs two endpoints");
      Interval iv{parse_number(ends[0], dline), parse_number(ends[1], dline)};
      if (!(iv.lo < iv.hi))
        fail(dline, "empty interval for coordinate '" + cname + "'");
      domain.push_back(iv);
    }

    std::vector<Expression> metric = parse_matrix(s, "metric", coords.size());
    try {
      auto chart = std::make_shared<ChartManifold>(ChartManifold::make(
          s.name, coords, std::move(domain), std::move(metric)));
      const MetallicParams def = MetallicParams::make(1, 1);
      chart->validate_metric(&def);
      spec.charts.emplace(s.name, std::move(chart));
    } catch (const Error& e) {
      fail(s.line, e.what());
    }
  }

  const ChartPtr& resolve_chart(const SpecFile& spec, const std::string& name,
                                int line) const {
    auto it = spec.charts.find(name);
    if (it == spec.charts.end())
      throw ReferenceError(origin_ + ":" + std::to_string(line) +
                           ": unknown chart '" + name + "'");
    return it->second;
  }

  void build_warp(SpecFile& spec, const Section& s) const {
    if (spec.warp.has_value()) fail(s.line, "only one [warp] section allowed");
    const ChartPtr& base =
        resolve_chart(spec, s.get("base", origin_), s.line_of("base"));
    const ChartPtr& fiber =
        resolve_chart(spec, s.get("fiber", origin_), s.line_of("fiber"));
    const Expression f = parse_expr(s.get("f", origin_), s, "f");
    try {
      spec.warp = WarpedProductSpec::make(base, fiber, f);
    } catch (const Error& e) {
      fail(s.line, e.what());
    }
    if (spec.charts.count("warped"))
      fail(s.line, "chart name 'warped' is reserved for the [warp] product");
    spec.charts.emplace("warped", spec.warp->product());
  }

  void build_structure(SpecFile& spec, const Section& s) const {
    if (spec.structures.count(s.name))
      fail(s.line, "duplicate structure '" + s.name + "'");
    const int p = parse_int(s.get_or("p", "1"), s.line_of("p"));
    const int q = parse_int(s.get_or("q", "1"), s.line_of("q"));
    MetallicParams params;
    try {
      params = MetallicParams::make(p, q);
    } catch (const Error& e) {
      fail(s.line, e.what());
    }

    if (s.has("induced")) {
      const std::string which = s.get("induced", origin_);
      if (which != "plus" && which != "minus")
        fail(s.line_of("induced"), "induced must be 'plus' or 'minus'");
      if (!spec.warp.has_value())
        fail(s.line, "induced structures need a [warp] section");
      try {
        ProductMetallicStructure ps = j_pm_product(
            *spec.warp, which == "plus" ? +1 : -1, params);
        spec.structures.emplace(
            s.name, SpecFile::Structure{std::move(ps.assembled), params});
      } catch (const Error& e) {
        fail(s.line, e.what());
      }
      return;
    }

    const ChartPtr& chart =
        resolve_chart(spec, s.get("chart", origin_), s.line_of("chart"));
    std::vector<Expression> entries =
        parse_matrix(s, "entries", static_cast<std::size_t>(chart->dim()));
    try {
      spec.structures.emplace(
          s.name,
          SpecFile::Structure{
              LinearOperatorField::make(chart, std::move(entries)), params});
    } catch (const Error& e) {
      fail(s.line, e.what());
    }
  }

  void build_map(SpecFile& spec, const Section& s) const {
    if (spec.maps.count(s.name)) fail(s.line, "duplicate map '" + s.name + "'");
    const ChartPtr& source =
        resolve_chart(spec, s.get("source", origin_), s.line_of("source"));
    const ChartPtr& target =
        resolve_chart(spec, s.get("target", origin_), s.line_of("target"));
    const std::string text = trim(s.get("components", origin_));
    const int line = s.line_of("components");
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      fail(line, "components must be a bracketed list");
    const std::vector<std::string> cells =
        split_top(text.substr(1, text.size() - 2));
    std::vector<Expression> comps;
    for (const std::string& c : cells)
      comps.push_back(parse_expr(c, s, "components"));
    try {
      spec.maps.emplace(s.name,
                        CoordinateMap::make(source, target, std::move(comps)));
    } catch (const Error& e) {
      fail(s.line, e.what());
    }
  }

  void build_suite(SpecFile& spec, const Section& s) const {
    SuiteRequest req;
    req.name = s.name;
    for (const auto& [k, v] : s.entries) {
      if (k == "label")
        req.label = v;
      else
        req.options[k] = v;
    }
    for (const SuiteRequest& other : spec.suites)
      if (other.name == req.name && other.label == req.label)
        fail(s.line, "repeated [suite " + req.name +
                         "] needs a distinct 'label = ...'");
    spec.suites.push_back(std::move(req));
  }

  std::string origin_;
  std::vector<Section> sections_;
};

}  // namespace

const ChartPtr& SpecFile::chart(const std::string& name) const {
  auto it = charts.find(name);
  if (it == charts.end())
    throw ReferenceError("unknown chart '" + name + "'");
  return it->second;
}

const SpecFile::Structure& SpecFile::structure(const std::string& name) const {
  auto it = structures.find(name);
  if (it == structures.end())
    throw ReferenceError("unknown structure '" + name + "'");
  return it->second;
}

const WarpedProductSpec& SpecFile::warp_spec() const {
  if (!warp.has_value())
    throw DomainError("this spec has no [warp] section");
  return *warp;
}

SpecFile parse_spec_text(const std::string& text, const std::string& origin) {
  SpecParser p(text, origin);
  return p.build();
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

}  // namespace mwp
