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

#ifndef PROTOWEAVE_TESTS_ORACLE_LITERAL_COMPOSE_HH_
#define PROTOWEAVE_TESTS_ORACLE_LITERAL_COMPOSE_HH_

#include <cstddef>
#include <set>
#include <string>

#include "protoweave/compose.hh"
#include "protoweave/env.hh"
#include "protoweave/protocol.hh"

namespace protoweave::oracle {

/// Alpha-canonical printed forms of every protocol derivable by applying the
/// composition rules as written, with an explicit swap rule that may not fire
/// twice in a row. `max_depth` bounds the height of derivations.
std::set<std::string> literal_compose(const Protocol& s1, const Protocol& s2, const Env& a,
                                      Mode mode, std::size_t max_depth = 64);

}  // namespace protoweave::oracle

#endif  // PROTOWEAVE_TESTS_ORACLE_LITERAL_COMPOSE_HH_
