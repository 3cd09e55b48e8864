/*
 * Copyright (c) 2026, The protoweave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROTOWEAVE_ASSERTIONS_HH_
#define PROTOWEAVE_ASSERTIONS_HH_

#include <optional>
#include <string>
#include <vector>

#include "protoweave/env.hh"
#include "protoweave/protocol.hh"

namespace protoweave {

/// Where and why a well-assertedness check failed.
struct WaFailure {
  /// Heads of the enclosing subterms, outermost first ("?pin", "sel{ok}", ...).
  std::vector<std::string> path;
  /// "require" or "consume".
  std::string rule;
  std::string name;
  /// Environment at the failing node.
  Env env;

  std::string str() const;
};

struct WaResult {
  std::optional<Env> post;
  WaFailure failure;

  bool ok() const { return post.has_value(); }
};

/**
 * Decides A {S} A' and computes A'.
 *
 * A recursion is evaluated once per distinct environment in which its body is
 * entered: the initial one and every environment reaching a call of its
 * variable. Calls and `end` yield their incoming environment, choices
 * intersect their branches, and the post-environment of `rec t.S` is the
 * intersection over all entries.
 */
WaResult well_asserted(const Env& a, const Protocol& s);

bool very_well_asserted(const Protocol& s);

}  // namespace protoweave

#endif  // PROTOWEAVE_ASSERTIONS_HH_
