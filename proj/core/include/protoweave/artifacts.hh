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

#ifndef PROTOWEAVE_ARTIFACTS_HH_
#define PROTOWEAVE_ARTIFACTS_HH_

#include <string>
#include <vector>

#include "protoweave/protocol.hh"

namespace protoweave {

/// Target of transitions that end the protocol.
inline constexpr const char* kStop = "$STOP";

struct Annotation {
  /// "assert", "require" or "consume".
  std::string kind;
  std::string name;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/**
 * Transition kinds: "send", "receive", "action" (neutral prefix), "select",
 * "offer", "plain" (choice branches) and "epsilon". Epsilon transitions carry
 * assertion chains that have no incoming transition to ride on (protocol
 * start, recursion entry); their label is "enter", or "stop" when they lead
 * to kStop.
 */
struct FsmTransition {
  std::string from;
  std::string to;
  std::string kind;
  std::string label;
  std::vector<Annotation> annotations;

  friend bool operator==(const FsmTransition&, const FsmTransition&) = default;
};

struct Fsm {
  std::string name;
  std::vector<std::string> states;
  std::string initial;
  std::vector<FsmTransition> transitions;

  friend bool operator==(const Fsm&, const Fsm&) = default;
};

/// Throws Error(kSchema) unless the FSM invariants hold.
void check_fsm(const Fsm& f);

/// One state per decision point, ids s0, s1, ... in depth-first preorder.
/// Requires a valid closed protocol (Error(kInvalidInput) otherwise).
Fsm to_fsm(const Protocol& s, const std::string& name = "protocol");

std::string emit_dot(const Fsm& f);

/// Compact JSON with sorted keys.
std::string emit_fsm_json(const Fsm& f);
/// Throws Error(kSchema) on malformed input.
Fsm parse_fsm_json(const std::string& text);

/// gen_statem-style skeleton with "%assert n" comment lines.
std::string emit_stub(const Fsm& f);
/// Reads back the output of emit_stub. Throws Error(kSchema).
Fsm parse_stub(const std::string& text);

/**
 * Rebuilds a protocol from an FSM. Back-edges become recursions; the result is
 * alpha-canonical. States unreachable from the initial one are dropped and
 * reported in `warnings`. Throws Error(kUnguardedCycle) for cycles made of
 * epsilon transitions only, Error(kSchema) for malformed graphs.
 */
Protocol extract(const Fsm& f, std::vector<std::string>* warnings = nullptr);
Protocol extract_json(const std::string& fsm_json, std::vector<std::string>* warnings = nullptr);

}  // namespace protoweave

#endif  // PROTOWEAVE_ARTIFACTS_HH_
