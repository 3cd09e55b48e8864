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

#ifndef PROTOWEAVE_VERIFY_HH_
#define PROTOWEAVE_VERIFY_HH_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoweave/env.hh"
#include "protoweave/protocol.hh"
#include "protoweave/semantics.hh"

namespace protoweave {

struct SimulationWitness {
  /// kInconclusive when either LTS or the pair space hit the cap.
  Verdict verdict = Verdict::kTrue;
  /// The surviving relation when the verdict is true.
  std::vector<std::pair<EnsembleConfig, EnsembleConfig>> relation;
  /// Labels matched before the failure, then the label the right side cannot follow.
  std::vector<Label> path;
  std::optional<Label> blocked;
  /// Left state from which `blocked` is taken.
  std::optional<EnsembleConfig> at;
};

/// Greatest simulation between the LTS of `lhs` and that of `rhs`.
SimulationWitness simulates(const EnsembleConfig& lhs, const EnsembleConfig& rhs,
                            std::size_t cap = kDefaultCap);
SimulationWitness simulates(const Config& lhs, const EnsembleConfig& rhs,
                            std::size_t cap = kDefaultCap);

inline constexpr std::size_t kDefaultDepth = 8;
inline constexpr std::size_t kMaxPrefix = 64;

/// A state of the fairness game: the composition with env and both components.
struct FairTriple {
  Env env;
  Protocol s;
  Protocol s0;
  Protocol s1;

  std::string str() const;
  friend bool operator==(const FairTriple&, const FairTriple&) = default;
};

struct FairnessReport {
  enum class Status { kHolds, kHoldsToDepth, kFails };

  Status status = Status::kHolds;
  /// Requested depth; triples deeper than this were assumed fair.
  std::size_t depth = 0;
  /// Triples explored.
  std::size_t explored = 0;

  // Failure witness.
  int component = -1;
  std::optional<Label> label;
  std::optional<FairTriple> state;
  /// Labels of the composition leading to `state` from the start.
  std::vector<Label> reach;
  /// For strong fairness: the other component's trace r after which the
  /// composition can no longer perform `label`.
  std::vector<Label> trace;

  bool holds() const { return status != Status::kFails; }
  /// "holds", "holds-to-depth(k)" or "fails".
  std::string verdict() const;
  /// Empty unless the check failed.
  std::string witness() const;
};

/// Fairness, bounded: triples beyond `depth` moves from the start count as fair.
FairnessReport check_fair(const Protocol& s, const Protocol& s0, const Protocol& s1,
                          const Env& a, std::size_t depth = kDefaultDepth);

/// Strong fairness, bounded in the same way.
FairnessReport check_strong_fair(const Protocol& s, const Protocol& s0, const Protocol& s1,
                                 const Env& a, std::size_t depth = kDefaultDepth);

/// Labels a component can perform regardless of the environment, with targets.
std::vector<std::pair<Label, Protocol>> component_steps(const Protocol& s);

}  // namespace protoweave

#endif  // PROTOWEAVE_VERIFY_HH_
