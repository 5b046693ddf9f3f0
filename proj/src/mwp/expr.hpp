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

#ifndef MWP_EXPR_HPP
#define MWP_EXPR_HPP

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "mwp/common.hpp"
#include "mwp/jet.hpp"
#include "mwp/metallic.hpp"

namespace mwp {

enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Ln, Sqrt };
enum class Sym { Sigma, Sigbar, Pi };

namespace detail {
struct Node;
}

/// Bindings for evaluation: coordinate values by name, plus the metallic
/// parameters that give the reserved constants `sigma` and `sigbar` their
/// values. Non-owning; callers keep names/values alive across the call.
struct EvalEnv {
  std::span<const std::string> names;
  std::span<const double> values;
  const MetallicParams* params = nullptr;

  EvalEnv() = default;
  EvalEnv(std::span<const std::string> n, std::span<const double> v,
          const MetallicParams* p = nullptr)
      : names(n), values(v), params(p) {}
};

/// Immutable scalar expression over named coordinates.
///
/// Grammar: binary + - * / ^ (with ^ right-associative and binding tighter
/// than unary minus), unary minus, sin/cos/exp/ln/sqrt, numeric literals,
/// variables, and the reserved constants sigma, sigbar, pi. Juxtaposition is
/// not multiplication; "u cos(a)" is a syntax error.
///
/// Expressions are values backed by a shared immutable tree: copying is
/// cheap, and evaluation is pure, so one Expression may be evaluated from
/// many threads at once.
class Expression {
public:
  Expression();  // the literal 0

  static Expression parse(std::string_view text);

  // Programmatic construction.
  static Expression number(double v);
  static Expression variable(std::string name);
  static Expression symbol(Sym s);
  static Expression unary_minus(Expression e);
  static Expression binary(BinOp op, Expression a, Expression b);
  static Expression call(Func f, Expression arg);

  friend Expression operator+(Expression a, Expression b) {
    return binary(BinOp::Add, std::move(a), std::move(b));
  }
  friend Expression operator-(Expression a, Expression b) {
    return binary(BinOp::Sub, std::move(a), std::move(b));
  }
  friend Expression operator*(Expression a, Expression b) {
    return binary(BinOp::Mul, std::move(a), std::move(b));
  }
  friend Expression operator/(Expression a, Expression b) {
    return binary(BinOp::Div, std::move(a), std::move(b));
  }
  static Expression pow(Expression base, Expression exponent) {
    return binary(BinOp::Pow, std::move(base), std::move(exponent));
  }

  /// Canonical text form; parse(str()) reproduces an equal tree.
  std::string str() const;

  /// Variable names occurring in the tree (reserved constants excluded).
  std::set<std::string> free_vars() const;

  /// True when the tree contains no variables (constants allowed).
  bool is_constant() const;

  /// Structural equality.
  bool equals(const Expression& other) const;

  /// Replaces every occurrence of the named variable by `replacement`.
  Expression substitute(const std::string& var,
                        const Expression& replacement) const;

  double eval(const EvalEnv& env) const;
  Jet2 eval_jet2(const EvalEnv& env) const;

  // Map-based conveniences (test and call-site friendly).
  double eval(const std::map<std::string, double>& env,
              const MetallicParams* params = nullptr) const;
  Jet2 eval_jet2(const std::map<std::string, double>& env,
                 const MetallicParams* params = nullptr) const;

private:
  explicit Expression(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;
};

}  // namespace mwp

#endif  // MWP_EXPR_HPP
