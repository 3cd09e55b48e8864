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

#ifndef PROTOWEAVE_SEMANTICS_HH_
#define PROTOWEAVE_SEMANTICS_HH_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoweave/env.hh"
#include "protoweave/protocol.hh"

namespace protoweave {

/// ℓ ::= p | +l | assert(n) | require(n) | consume(n)
struct Label {
  enum class Kind : std::uint8_t { kAct, kChoose, kAssert, kRequire, kConsume };

  Kind kind = Kind::kAct;
  Action action;
  ChoiceOp op = ChoiceOp::kPlain;
  /// Branch label for kChoose, assertion name for the assertion kinds.
  std::string name;

  static Label act(Action a) { return {Kind::kAct, std::move(a), ChoiceOp::kPlain, {}}; }
  static Label choose(ChoiceOp op, std::string l) {
    return {Kind::kChoose, {}, op, std::move(l)};
  }
  static Label asserted(std::string n) { return {Kind::kAssert, {}, ChoiceOp::kPlain, std::move(n)}; }
  static Label required(std::string n) {
    return {Kind::kRequire, {}, ChoiceOp::kPlain, std::move(n)};
  }
  static Label consumed(std::string n) {
    return {Kind::kConsume, {}, ChoiceOp::kPlain, std::move(n)};
  }

  bool is_assertion() const {
    return kind == Kind::kAssert || kind == Kind::kRequire || kind == Kind::kConsume;
  }

  /// "!p", "?p", "p", "sel{ok}", "bra{ok}", "+{ok}", "assert(n)", ...
  std::string str() const;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

std::string to_string(const std::vector<Label>& trace);

struct Config {
  Env env;
  Protocol proto;

  friend bool operator==(const Config&, const Config&) = default;
};

/// (A, S) when `right` is absent, (A, S1 || S2) otherwise.
struct EnsembleConfig {
  Env env;
  Protocol left;
  std::optional<Protocol> right;

  EnsembleConfig() = default;
  EnsembleConfig(Env env, Protocol left) : env(std::move(env)), left(std::move(left)) {}
  EnsembleConfig(Env env, Protocol left, Protocol right)
      : env(std::move(env)), left(std::move(left)), right(std::move(right)) {}
  explicit EnsembleConfig(const Config& c) : env(c.env), left(c.proto) {}

  bool is_end() const;
  std::size_t hash() const;
  std::string term() const;
  std::string str() const;

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const;
};
struct EnsembleConfigHash {
  std::size_t operator()(const EnsembleConfig& c) const { return c.hash(); }
};

template <typename C>
using Successors = std::vector<std::pair<Label, C>>;

/// Exactly the successors licensed by Inter, Branch, Assert, Require, Consume
/// and Rec.
Successors<Config> step(const Config& c);

/// Left moves (Com1) followed by right moves (Com2) over the shared env.
Successors<EnsembleConfig> ensemble_step(const EnsembleConfig& c);

/// Labels only; cheaper when targets are not needed.
std::vector<Label> enabled(const Config& c);

struct LtsGraph {
  struct Edge {
    std::size_t from;
    Label label;
    std::size_t to;
  };

  std::vector<EnsembleConfig> nodes;
  std::vector<Edge> edges;
  /// Outgoing edge indices per node.
  std::vector<std::vector<std::size_t>> out;
  std::size_t initial = 0;
  /// Set when the node cap stopped the exploration.
  bool truncated = false;
  /// Number of nodes whose successors were computed.
  std::size_t expanded = 0;

  std::optional<std::size_t> find(const EnsembleConfig& c) const;
  /// Labels of a shortest path from the initial node.
  std::vector<Label> path_to(std::size_t node) const;
};

inline constexpr std::size_t kDefaultCap = 10000;

/// BFS from `c`, memoized on structural identity; stops growing at `cap` nodes.
LtsGraph explore(const EnsembleConfig& c, std::size_t cap = kDefaultCap);
LtsGraph explore(const Config& c, std::size_t cap = kDefaultCap);

bool is_stuck(const Config& c);
bool is_stuck(const EnsembleConfig& c);

enum class Verdict { kTrue, kFalse, kInconclusive };

const char* verdict_name(Verdict v);

struct ProgressResult {
  Verdict verdict = Verdict::kTrue;
  /// When false: labels leading from the start to `stuck`.
  std::vector<Label> witness;
  std::optional<EnsembleConfig> stuck;
};

/// No state reachable from (∅, S) is stuck.
ProgressResult has_progress(const Protocol& s, std::size_t cap = kDefaultCap);
/// Same check from an arbitrary starting configuration.
ProgressResult has_progress_from(const EnsembleConfig& c, std::size_t cap = kDefaultCap);

/// One "i -> j : label ⊢ env ⊢ protocol" line per edge, in edge order.
std::string format_trace(const LtsGraph& g);

}  // namespace protoweave

#endif  // PROTOWEAVE_SEMANTICS_HH_
