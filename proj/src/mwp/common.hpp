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

#ifndef MWP_COMMON_HPP
#define MWP_COMMON_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mwp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed expression or spec-file text. Carries the byte offset of the
/// first offending character and, for expressions, the token set that would
/// have been accepted there.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Numeric evaluation failure: unbound variable, division by zero, or a
/// function applied outside its domain. `subexpr` is the printed form of the
/// offending subtree.
class EvalError : public Error {
public:
  EvalError(const std::string& what, std::string subexpr)
      : Error(what + " in `" + subexpr + "`"), subexpr_(std::move(subexpr)) {}

  const std::string& subexpr() const { return subexpr_; }

private:
  std::string subexpr_;
};

/// Geometric precondition failure: degenerate metric, point outside the
/// chart domain, non-positive warp, operator not metallic, and so on.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Name resolution failure while assembling a spec file.
class ReferenceError : public Error {
public:
  explicit ReferenceError(const std::string& what) : Error(what) {}
};

/// Closed real interval used for per-coordinate sampling domains.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
};

}  // namespace mwp

#endif  // MWP_COMMON_HPP
