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

#ifndef PROTOWEAVE_TESTS_ORACLE_WA_ORACLE_HH_
#define PROTOWEAVE_TESTS_ORACLE_WA_ORACLE_HH_

#include <optional>

#include "protoweave/env.hh"
#include "protoweave/protocol.hh"

namespace protoweave::oracle {

struct WaVerdict {
  bool ok = false;
  /// Intersection of the envs at reachable `end` states and at loop heads on
  /// a cycle. Empty when nothing of the kind is reachable.
  std::optional<Env> post;
};

/// Runs (a, s) with every require/consume treated as a check that never
/// blocks, and fails when any reachable check finds its name missing.
WaVerdict semantic_well_asserted(const Env& a, const Protocol& s);

}  // namespace protoweave::oracle

#endif  // PROTOWEAVE_TESTS_ORACLE_WA_ORACLE_HH_
