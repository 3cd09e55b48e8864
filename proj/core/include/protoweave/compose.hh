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

#ifndef PROTOWEAVE_COMPOSE_HH_
#define PROTOWEAVE_COMPOSE_HH_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoweave/env.hh"
#include "protoweave/protocol.hh"

namespace protoweave {

/// Branching rules enabled on top of the base rules.
enum class Mode { kStrong, kWeak, kCorrelating, kAll };

/// "strong", "weak", "corr" or "all".
const char* mode_name(Mode mode);
/// Accepts the names above plus "correlating". Throws Error(kUsage).
Mode parse_mode(const std::string& text);
inline bool mode_has_weak(Mode m) { return m == Mode::kWeak || m == Mode::kAll; }
inline bool mode_has_correlating(Mode m) { return m == Mode::kCorrelating || m == Mode::kAll; }

inline constexpr std::size_t kDefaultBudget = 1000000;

/// An ordered list of recursion variables; `used` marks a merged variable.
struct RecEnv {
  std::vector<std::pair<std::string, bool>> entries;

  bool contains_used(const std::string& var) const;
  RecEnv pushed(const std::string& var) const;
  RecEnv marked(std::size_t index) const;
  /// Positions k with entry k unused and every later entry unused.
  std::vector<std::size_t> mergeable() const;

  friend bool operator==(const RecEnv&, const RecEnv&) = default;
  friend auto operator<=>(const RecEnv&, const RecEnv&) = default;
};

struct ComposeOptions {
  std::size_t budget = kDefaultBudget;
  /// Collect up to this many blocked-premise notes.
  std::size_t max_diagnostics = 16;
};

struct CompositionResult {
  /// One representative per alpha class, ordered by canonical print.
  std::vector<Protocol> results;
  /// Structurally distinct results, binder-freshened, in the same order.
  std::vector<Protocol> raw_results;
  std::size_t raw_count = 0;
  std::size_t canonical_count = 0;
  /// Search nodes visited.
  std::size_t visited = 0;
  /// Premises that blocked the search, e.g. "require(pin) not in {}".
  std::vector<std::string> diagnostics;
};

/**
 * All S with  ∅; ∅; A ⊢ s1 ∘ s2 ▷ S  under `mode`.
 *
 * Inputs must be valid and closed (Error(kInvalidInput) otherwise). The
 * binders of s2 are renamed away from those of s1 first. Throws
 * Error(kBudget) when the search visits more than `budget` nodes.
 */
CompositionResult compose(const Protocol& s1, const Protocol& s2, const Env& a, Mode mode,
                          const ComposeOptions& options = {});

/// The raw judgement with explicit recursion environments, without the
/// closedness check, freshening or post-processing. Open operands allowed.
std::vector<Protocol> compose_judgement(const RecEnv& tl, const RecEnv& tr, const Env& a,
                                        const Protocol& s1, const Protocol& s2, Mode mode,
                                        std::size_t budget = kDefaultBudget);

}  // namespace protoweave

#endif  // PROTOWEAVE_COMPOSE_HH_
