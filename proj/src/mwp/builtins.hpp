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

#ifndef MWP_BUILTINS_HPP
#define MWP_BUILTINS_HPP

#include <string>
#include <vector>

namespace mwp {

/// True for sources of the form "builtin:<name>[?k=v&k=v...]".
bool is_builtin_source(const std::string& source);

/// Names of the registered built-in specs.
const std::vector<std::string>& builtin_names();

/// Spec text of a built-in (query parameters substituted). Throws
/// ReferenceError for unknown names, DomainError for bad parameters.
std::string builtin_spec_text(const std::string& source);

}  // namespace mwp

#endif  // MWP_BUILTINS_HPP
