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

#ifndef PROTOWEAVE_PROTOCOL_HH_
#define PROTOWEAVE_PROTOCOL_HH_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace protoweave {

enum class Polarity : std::uint8_t { kSend, kReceive, kNeutral };

/// A prefixing action: a polarity and an opaque payload token.
struct Action {
  Polarity polarity = Polarity::kNeutral;
  std::string payload;

  static Action send(std::string payload) { return {Polarity::kSend, std::move(payload)}; }
  static Action receive(std::string payload) {
    return {Polarity::kReceive, std::move(payload)};
  }
  static Action neutral(std::string payload) {
    return {Polarity::kNeutral, std::move(payload)};
  }

  /// "!p", "?p" or "p".
  std::string str() const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

/// Branching operators: plain "+", select (internal choice) and offer.
enum class ChoiceOp : std::uint8_t { kPlain, kSelect, kOffer };

/// Concrete-syntax keyword of a choice operator: "+", "sel" or "bra".
const char* choice_op_keyword(ChoiceOp op);

enum class Kind : std::uint8_t {
  kEnd,
  kVar,
  kRec,
  kPrefix,
  kChoice,
  kAssert,
  kRequire,
  kConsume,
};

struct Branch;

/**
 * An asserted protocol.
 *
 * Protocol is an immutable value with shared structure: copying is cheap and
 * every node caches its hash, node count and free variables. Equality is
 * structural, with the branches of a choice compared as a label-keyed map
 * (source order is kept for printing only).
 */
class Protocol {
 public:
  /// Default-constructed protocols are `end`.
  Protocol();

  static Protocol end();
  static Protocol var(std::string name);
  static Protocol rec(std::string var, Protocol body);
  static Protocol prefix(Action action, Protocol cont);
  static Protocol choice(ChoiceOp op, std::vector<Branch> branches);
  static Protocol assert_(std::string name, Protocol cont);
  static Protocol require(std::string name, Protocol cont);
  static Protocol consume(std::string name, Protocol cont);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  /// Variable name (kVar), binder (kRec) or assertion name (kAssert etc.).
  const std::string& name() const;
  const Action& action() const;
  ChoiceOp op() const;
  const std::vector<Branch>& branches() const;
  /// Continuation of prefixes and assertions; body of a recursion.
  const Protocol& cont() const;

  std::size_t hash() const;
  /// Number of syntax nodes, binders included.
  std::size_t size() const;
  /// Sorted, duplicate-free.
  const std::vector<std::string>& free_vars() const;
  bool closed() const { return free_vars().empty(); }
  bool has_free(const std::string& var) const;

  /// Same node in memory; implies equality.
  bool same_node(const Protocol& other) const { return node_ == other.node_; }

  friend bool operator==(const Protocol& a, const Protocol& b);

  struct Node;

 private:
  explicit Protocol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Branch {
  std::string label;
  Protocol cont;

  friend bool operator==(const Branch&, const Branch&) = default;
};

struct ProtocolHash {
  std::size_t operator()(const Protocol& p) const { return p.hash(); }
};

/// Single-line concrete syntax; see syntax.hh for the grammar.
std::string to_string(const Protocol& p);
std::ostream& operator<<(std::ostream& os, const Protocol& p);

// -- structural operations ---------------------------------------------------

/// Recursion variables occurring free in `s`.
std::vector<std::string> free_vars(const Protocol& s);

/**
 * Capture-avoiding substitution of `replacement` for the free occurrences of
 * `var` in `s`. Throws Error(kCapture) when a binder of `s` would capture a
 * free variable of `replacement`.
 */
Protocol substitute(const Protocol& s, const std::string& var, const Protocol& replacement);

/// One-time unfolding of `rec t.S` into `S[rec t.S / t]`.
Protocol unfold(const Protocol& s);

/// The outermost binder when `s` is a recursion.
std::optional<std::string> top(const Protocol& s);

/**
 * Renames bound variables to r0, r1, ... in depth-first preorder. Branches are
 * visited in label order so that the numbering does not depend on source
 * order; the stored branch order is preserved.
 */
Protocol alpha_canonicalize(const Protocol& s);

bool alpha_eq(const Protocol& a, const Protocol& b);

/// Swaps send/receive and select/offer. Throws Error(kUndualizable) on
/// neutral actions or plain choices.
Protocol dual(const Protocol& s);

/// Drops every assert/require/consume node.
Protocol erase_assertions(const Protocol& s);

/// Renames binders so that all bound names are pairwise distinct and distinct
/// from the free names. The first occurrence of a name keeps it.
Protocol freshen(const Protocol& s);

/// Renames the binders of `s` that clash with any name in `taken`.
Protocol freshen_against(const Protocol& s, const std::vector<std::string>& taken);

/// All binder names, in depth-first preorder (duplicates kept).
std::vector<std::string> bound_vars(const Protocol& s);

/// Every assertion name mentioned by an assert/require/consume node, sorted.
std::vector<std::string> assertion_names(const Protocol& s);

bool has_assertions(const Protocol& s);

// -- validation --------------------------------------------------------------

enum class ViolationKind {
  kUnguardedVar,
  kUnusedBinder,
  kNestedRecursion,
  kDuplicateLabel,
  kEmptyChoice,
  kDuplicateBinder,
  kBadIdentifier,
};

const char* violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;

  std::string str() const;
};

/// Checks every structural invariant and reports all violations found.
std::vector<Violation> validate(const Protocol& s);

bool is_identifier(const std::string& token);

}  // namespace protoweave

#endif  // PROTOWEAVE_PROTOCOL_HH_
