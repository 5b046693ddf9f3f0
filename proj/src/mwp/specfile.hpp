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

#ifndef MWP_SPECFILE_HPP
#define MWP_SPECFILE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mwp/product_structures.hpp"

namespace mwp {

/// One [suite <name>] section: which suite to run and its options. A
/// repeated suite name needs a distinct `label = ...` to keep check ids
/// unique.
struct SuiteRequest {
  std::string name;
  std::string label;
  std::map<std::string, std::string> options;

  std::string id_prefix() const {
    return label.empty() ? name : name + "[" + label + "]";
  }
};

/// A parsed and cross-referenced verification spec.
///
/// Line-oriented sectioned text:
///
///   [manifold <name>]
///   dim = 2
///   coords = theta, phi
///   domain = theta in [0.4, 2.7], phi in [0.1, 6.1]
///   metric = [[1, 0], [0, sin(theta)^2]]
///
///   [warp]                      # registers the chart name "warped"
///   base = <manifold>
///   fiber = <manifold>
///   f = <expression over base coordinates>
///
///   [structure <name>]
///   chart = <manifold or warped>
///   p = 1
///   q = 1
///   entries = [[sigma, 0], [0, sigbar]]   # or: induced = plus|minus
///
///   [map <name>]
///   source = <chart>
///   target = <chart>
///   components = [u]
///
///   [suite <name>]
///   key = value
///
/// Lines starting with # are comments.
struct SpecFile {
  struct Structure {
    LinearOperatorField field;
    MetallicParams params;
  };

  std::string origin;
  std::map<std::string, ChartPtr> charts;
  std::optional<WarpedProductSpec> warp;
  std::map<std::string, Structure> structures;
  std::map<std::string, CoordinateMap> maps;
  std::vector<SuiteRequest> suites;

  const ChartPtr& chart(const std::string& name) const;
  const Structure& structure(const std::string& name) const;
  const WarpedProductSpec& warp_spec() const;
};

/// Parses spec text. `origin` labels error messages (file path or source
/// tag). Throws ParseError / ReferenceError / DomainError with
/// "origin:line:" prefixes.
SpecFile parse_spec_text(const std::string& text, const std::string& origin);

/// Reads and parses a spec file from disk.
SpecFile load_spec(const std::string& path);

}  // namespace mwp

#endif  // MWP_SPECFILE_HPP
