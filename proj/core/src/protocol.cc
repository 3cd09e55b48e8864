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

#include "protoweave/protocol.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "protoweave/error.hh"

namespace protoweave {

namespace {

std::size_t mix(std::size_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (mix(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>()(s); }

}  // namespace

std::string Action::str() const {
  switch (polarity) {
    case Polarity::kSend:
      return "!" + payload;
    case Polarity::kReceive:
      return "?" + payload;
    case Polarity::kNeutral:
      return payload;
  }
  return payload;
}

const char* choice_op_keyword(ChoiceOp op) {
  switch (op) {
    case ChoiceOp::kPlain:
      return "+";
    case ChoiceOp::kSelect:
      return "sel";
    case ChoiceOp::kOffer:
      return "bra";
  }
  return "+";
}

struct Protocol::Node {
  Kind kind = Kind::kEnd;
  std::string name;
  Action action;
  ChoiceOp op = ChoiceOp::kPlain;
  std::vector<Branch> branches;
  Protocol cont;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::vector<std::string> fv;

  // The end node's `cont` would recurse into itself; it is built separately.
  explicit Node(bool) : cont(nullptr) {}
  Node() = default;
};

namespace {

const std::shared_ptr<const Protocol::Node>& end_node();

}  // namespace

Protocol::Protocol() : node_(end_node()) {}

namespace {

const std::shared_ptr<const Protocol::Node>& end_node() {
  static const std::shared_ptr<const Protocol::Node> node = [] {
    auto n = std::make_shared<Protocol::Node>(true);
    n->kind = Kind::kEnd;
    n->hash = mix(static_cast<std::size_t>(Kind::kEnd) + 1);
    n->size = 1;
    return std::shared_ptr<const Protocol::Node>(std::move(n));
  }();
  return node;
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Protocol Protocol::end() { return Protocol(); }

Protocol Protocol::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->hash = combine(mix(static_cast<std::size_t>(Kind::kVar) + 1), str_hash(name));
  n->fv = {name};
  n->name = std::move(name);
  return Protocol(std::move(n));
}

Protocol Protocol::rec(std::string var, Protocol body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kRec;
  n->hash = combine(combine(mix(static_cast<std::size_t>(Kind::kRec) + 1), str_hash(var)),
                    body.hash());
  n->size = 1 + body.size();
  n->fv = body.free_vars();
  n->fv.erase(std::remove(n->fv.begin(), n->fv.end(), var), n->fv.end());
  n->name = std::move(var);
  n->cont = std::move(body);
  return Protocol(std::move(n));
}

Protocol Protocol::prefix(Action action, Protocol cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kPrefix;
  std::size_t h = mix(static_cast<std::size_t>(Kind::kPrefix) + 1);
  h = combine(h, static_cast<std::size_t>(action.polarity));
  h = combine(h, str_hash(action.payload));
  n->hash = combine(h, cont.hash());
  n->size = 1 + cont.size();
  n->fv = cont.free_vars();
  n->action = std::move(action);
  n->cont = std::move(cont);
  return Protocol(std::move(n));
}

Protocol Protocol::choice(ChoiceOp op, std::vector<Branch> branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kChoice;
  std::size_t h = combine(mix(static_cast<std::size_t>(Kind::kChoice) + 1),
                          static_cast<std::size_t>(op));
  // Order-insensitive: branches form a map.
  std::size_t acc = 0;
  std::size_t size = 1;
  std::vector<std::string> fv;
  for (const auto& b : branches) {
    acc += mix(combine(str_hash(b.label), b.cont.hash()));
    size += b.cont.size();
    fv = merge_sorted(fv, b.cont.free_vars());
  }
  n->hash = combine(h, acc);
  n->size = size;
  n->fv = std::move(fv);
  n->op = op;
  n->branches = std::move(branches);
  return Protocol(std::move(n));
}

#define PROTOWEAVE_ASSERTION_FACTORY(fn, k)                                          \
  Protocol Protocol::fn(std::string name, Protocol cont) {                           \
    auto n = std::make_shared<Node>();                                               \
    n->kind = k;                                                                     \
    n->hash = combine(combine(mix(static_cast<std::size_t>(k) + 1), str_hash(name)), \
                      cont.hash());                                                  \
    n->size = 1 + cont.size();                                                       \
    n->fv = cont.free_vars();                                                        \
    n->name = std::move(name);                                                       \
    n->cont = std::move(cont);                                                       \
    return Protocol(std::move(n));                                                   \
  }

PROTOWEAVE_ASSERTION_FACTORY(assert_, Kind::kAssert)
PROTOWEAVE_ASSERTION_FACTORY(require, Kind::kRequire)
PROTOWEAVE_ASSERTION_FACTORY(consume, Kind::kConsume)

#undef PROTOWEAVE_ASSERTION_FACTORY

Kind Protocol::kind() const { return node_->kind; }
const std::string& Protocol::name() const { return node_->name; }
const Action& Protocol::action() const { return node_->action; }
ChoiceOp Protocol::op() const { return node_->op; }
const std::vector<Branch>& Protocol::branches() const { return node_->branches; }

const Protocol& Protocol::cont() const {
  if (node_->kind == Kind::kEnd || node_->kind == Kind::kVar ||
      node_->kind == Kind::kChoice) {
    static const Protocol kEnd;
    return kEnd;
  }
  return node_->cont;
}

std::size_t Protocol::hash() const { return node_->hash; }
std::size_t Protocol::size() const { return node_->size; }
const std::vector<std::string>& Protocol::free_vars() const { return node_->fv; }

bool Protocol::has_free(const std::string& var) const {
  return std::binary_search(node_->fv.begin(), node_->fv.end(), var);
}

bool operator==(const Protocol& a, const Protocol& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::kEnd:
      return true;
    case Kind::kVar:
      return a.name() == b.name();
    case Kind::kRec:
    case Kind::kAssert:
    case Kind::kRequire:
    case Kind::kConsume:
      return a.name() == b.name() && a.cont() == b.cont();
    case Kind::kPrefix:
      return a.action() == b.action() && a.cont() == b.cont();
    case Kind::kChoice: {
      if (a.op() != b.op() || a.branches().size() != b.branches().size()) return false;
      for (const auto& ba : a.branches()) {
        auto it = std::find_if(b.branches().begin(), b.branches().end(),
                               [&](const Branch& bb) { return bb.label == ba.label; });
        if (it == b.branches().end() || !(it->cont == ba.cont)) return false;
      }
      return true;
    }
  }
  return false;
}

// -- printing ----------------------------------------------------------------

namespace {

void print_to(std::string& out, const Protocol& p) {
  const Protocol* cur = &p;
  while (true) {
    switch (cur->kind()) {
      case Kind::kEnd:
        out += "end";
        return;
      case Kind::kVar:
        out += cur->name();
        return;
      case Kind::kRec:
        out += "rec ";
        out += cur->name();
        out += ".";
        break;
      case Kind::kPrefix:
        out += cur->action().str();
        out += ".";
        break;
      case Kind::kAssert:
        out += "assert(" + cur->name() + ").";
        break;
      case Kind::kRequire:
        out += "require(" + cur->name() + ").";
        break;
      case Kind::kConsume:
        out += "consume(" + cur->name() + ").";
        break;
      case Kind::kChoice: {
        out += choice_op_keyword(cur->op());
        out += "{";
        bool first = true;
        for (const auto& b : cur->branches()) {
          if (!first) out += ", ";
          first = false;
          out += b.label;
          out += ": ";
          print_to(out, b.cont);
        }
        out += "}";
        return;
      }
    }
    cur = &cur->cont();
  }
}

}  // namespace

std::string to_string(const Protocol& p) {
  std::string out;
  print_to(out, p);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Protocol& p) { return os << to_string(p); }

// -- structural operations ---------------------------------------------------

std::vector<std::string> free_vars(const Protocol& s) { return s.free_vars(); }

namespace {

Protocol rebuild(const Protocol& s, Protocol cont) {
  switch (s.kind()) {
    case Kind::kRec:
      return Protocol::rec(s.name(), std::move(cont));
    case Kind::kPrefix:
      return Protocol::prefix(s.action(), std::move(cont));
    case Kind::kAssert:
      return Protocol::assert_(s.name(), std::move(cont));
    case Kind::kRequire:
      return Protocol::require(s.name(), std::move(cont));
    case Kind::kConsume:
      return Protocol::consume(s.name(), std::move(cont));
    default:
      return s;
  }
}

}  // namespace

Protocol substitute(const Protocol& s, const std::string& var, const Protocol& replacement) {
  if (!s.has_free(var)) return s;
  switch (s.kind()) {
    case Kind::kEnd:
      return s;
    case Kind::kVar:
      return s.name() == var ? replacement : s;
    case Kind::kRec:
      if (replacement.has_free(s.name())) {
        throw Error(ErrorCategory::kCapture, "binder " + s.name() +
                                                 " would capture a free variable of " +
                                                 to_string(replacement));
      }
      return rebuild(s, substitute(s.cont(), var, replacement));
    case Kind::kChoice: {
      std::vector<Branch> bs;
      bs.reserve(s.branches().size());
      for (const auto& b : s.branches()) {
        bs.push_back({b.label, substitute(b.cont, var, replacement)});
      }
      return Protocol::choice(s.op(), std::move(bs));
    }
    default:
      return rebuild(s, substitute(s.cont(), var, replacement));
  }
}

Protocol unfold(const Protocol& s) {
  if (!s.is(Kind::kRec)) {
    throw Error(ErrorCategory::kNotRecursion, "not a recursion: " + to_string(s));
  }
  return substitute(s.cont(), s.name(), s);
}

std::optional<std::string> top(const Protocol& s) {
  if (s.is(Kind::kRec)) return s.name();
  return std::nullopt;
}

namespace {

// Generic binder renaming. `pick` decides the new name for each binder in
// preorder; `order_branches` visits choice branches in label order.
class Renamer {
 public:
  using Picker = std::function<std::string(const std::string&)>;

  Renamer(Picker pick, bool order_branches)
      : pick_(std::move(pick)), order_branches_(order_branches) {}

  Protocol run(const Protocol& s) {
    switch (s.kind()) {
      case Kind::kEnd:
        return s;
      case Kind::kVar: {
        auto it = scope_.find(s.name());
        if (it == scope_.end() || it->second.empty()) return s;
        const auto& to = it->second.back();
        return to == s.name() ? s : Protocol::var(to);
      }
      case Kind::kRec: {
        std::string fresh = pick_(s.name());
        scope_[s.name()].push_back(fresh);
        Protocol body = run(s.cont());
        scope_[s.name()].pop_back();
        if (fresh == s.name() && body.same_node(s.cont())) return s;
        return Protocol::rec(fresh, std::move(body));
      }
      case Kind::kChoice: {
        const auto& src = s.branches();
        std::vector<std::size_t> order(src.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (order_branches_) {
          std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return src[a].label < src[b].label;
          });
        }
        std::vector<Branch> out(src.size());
        bool changed = false;
        for (std::size_t i : order) {
          out[i] = {src[i].label, run(src[i].cont)};
          changed = changed || !out[i].cont.same_node(src[i].cont);
        }
        if (!changed) return s;
        return Protocol::choice(s.op(), std::move(out));
      }
      default: {
        Protocol c = run(s.cont());
        if (c.same_node(s.cont())) return s;
        return rebuild(s, std::move(c));
      }
    }
  }

 private:
  Picker pick_;
  bool order_branches_;
  std::unordered_map<std::string, std::vector<std::string>> scope_;
};

void collect_binders(const Protocol& s, std::vector<std::string>& out) {
  switch (s.kind()) {
    case Kind::kEnd:
    case Kind::kVar:
      return;
    case Kind::kRec:
      out.push_back(s.name());
      collect_binders(s.cont(), out);
      return;
    case Kind::kChoice:
      for (const auto& b : s.branches()) collect_binders(b.cont, out);
      return;
    default:
      collect_binders(s.cont(), out);
  }
}

}  // namespace

Protocol alpha_canonicalize(const Protocol& s) {
  std::unordered_set<std::string> avoid(s.free_vars().begin(), s.free_vars().end());
  int counter = 0;
  Renamer renamer(
      [&](const std::string&) {
        std::string name;
        do {
          name = "r" + std::to_string(counter++);
        } while (avoid.count(name));
        return name;
      },
      true);
  return renamer.run(s);
}

bool alpha_eq(const Protocol& a, const Protocol& b) {
  if (a == b) return true;
  if (a.hash() == b.hash() && a.size() != b.size()) return false;
  return alpha_canonicalize(a) == alpha_canonicalize(b);
}

Protocol dual(const Protocol& s) {
  switch (s.kind()) {
    case Kind::kEnd:
    case Kind::kVar:
      return s;
    case Kind::kPrefix: {
      Action a = s.action();
      if (a.polarity == Polarity::kNeutral) {
        throw Error(ErrorCategory::kUndualizable, "neutral action " + a.payload);
      }
      a.polarity = a.polarity == Polarity::kSend ? Polarity::kReceive : Polarity::kSend;
      return Protocol::prefix(std::move(a), dual(s.cont()));
    }
    case Kind::kChoice: {
      if (s.op() == ChoiceOp::kPlain) {
        throw Error(ErrorCategory::kUndualizable, "plain choice has no dual");
      }
      std::vector<Branch> bs;
      for (const auto& b : s.branches()) bs.push_back({b.label, dual(b.cont)});
      return Protocol::choice(s.op() == ChoiceOp::kSelect ? ChoiceOp::kOffer : ChoiceOp::kSelect,
                              std::move(bs));
    }
    default:
      return rebuild(s, dual(s.cont()));
  }
}

Protocol erase_assertions(const Protocol& s) {
  switch (s.kind()) {
    case Kind::kEnd:
    case Kind::kVar:
      return s;
    case Kind::kAssert:
    case Kind::kRequire:
    case Kind::kConsume:
      return erase_assertions(s.cont());
    case Kind::kChoice: {
      std::vector<Branch> bs;
      for (const auto& b : s.branches()) bs.push_back({b.label, erase_assertions(b.cont)});
      return Protocol::choice(s.op(), std::move(bs));
    }
    default:
      return rebuild(s, erase_assertions(s.cont()));
  }
}

namespace {

Protocol freshen_impl(const Protocol& s, std::unordered_set<std::string> seen) {
  std::unordered_set<std::string> all(seen);
  for (const auto& v : s.free_vars()) {
    all.insert(v);
    seen.insert(v);
  }
  std::vector<std::string> binders;
  collect_binders(s, binders);
  all.insert(binders.begin(), binders.end());
  Renamer renamer(
      [&](const std::string& name) {
        if (seen.insert(name).second) return name;
        for (int k = 1;; ++k) {
          std::string cand = name + "_" + std::to_string(k);
          if (!all.count(cand)) {
            all.insert(cand);
            seen.insert(cand);
            return cand;
          }
        }
      },
      false);
  return renamer.run(s);
}

}  // namespace

Protocol freshen(const Protocol& s) { return freshen_impl(s, {}); }

Protocol freshen_against(const Protocol& s, const std::vector<std::string>& taken) {
  return freshen_impl(s, std::unordered_set<std::string>(taken.begin(), taken.end()));
}

std::vector<std::string> bound_vars(const Protocol& s) {
  std::vector<std::string> out;
  collect_binders(s, out);
  return out;
}

namespace {

void collect_assertions(const Protocol& s, std::set<std::string>& out) {
  switch (s.kind()) {
    case Kind::kEnd:
    case Kind::kVar:
      return;
    case Kind::kChoice:
      for (const auto& b : s.branches()) collect_assertions(b.cont, out);
      return;
    case Kind::kAssert:
    case Kind::kRequire:
    case Kind::kConsume:
      out.insert(s.name());
      [[fallthrough]];
    default:
      collect_assertions(s.cont(), out);
  }
}

}  // namespace

std::vector<std::string> assertion_names(const Protocol& s) {
  std::set<std::string> names;
  collect_assertions(s, names);
  return {names.begin(), names.end()};
}

bool has_assertions(const Protocol& s) {
  switch (s.kind()) {
    case Kind::kEnd:
    case Kind::kVar:
      return false;
    case Kind::kAssert:
    case Kind::kRequire:
    case Kind::kConsume:
      return true;
    case Kind::kChoice:
      return std::any_of(s.branches().begin(), s.branches().end(),
                         [](const Branch& b) { return has_assertions(b.cont); });
    default:
      return has_assertions(s.cont());
  }
}

// -- validation --------------------------------------------------------------

const char* violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kUnguardedVar:
      return "unguarded-variable";
    case ViolationKind::kUnusedBinder:
      return "unused-binder";
    case ViolationKind::kNestedRecursion:
      return "nested-recursion";
    case ViolationKind::kDuplicateLabel:
      return "duplicate-label";
    case ViolationKind::kEmptyChoice:
      return "empty-choice";
    case ViolationKind::kDuplicateBinder:
      return "duplicate-binder";
    case ViolationKind::kBadIdentifier:
      return "bad-identifier";
  }
  return "unknown";
}

std::string Violation::str() const { return std::string(violation_name(kind)) + ": " + detail; }

bool is_identifier(const std::string& token) {
  if (token.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(token[0])) return false;
  return std::all_of(token.begin() + 1, token.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

namespace {

class Validator {
 public:
  explicit Validator(const Protocol& root) {
    for (const auto& v : root.free_vars()) names_.insert(v);
  }

  void visit(const Protocol& s, std::set<std::string>& unguarded) {
    switch (s.kind()) {
      case Kind::kEnd:
        return;
      case Kind::kVar:
        ident(s.name(), "variable");
        if (unguarded.count(s.name())) {
          report(ViolationKind::kUnguardedVar, "variable " + s.name() + " is not guarded");
        }
        return;
      case Kind::kRec: {
        ident(s.name(), "variable");
        if (!names_.insert(s.name()).second) {
          report(ViolationKind::kDuplicateBinder, "binder " + s.name() + " is not fresh");
        }
        if (!s.cont().has_free(s.name())) {
          report(ViolationKind::kUnusedBinder,
                 "variable " + s.name() + " does not occur free in its body");
        }
        if (s.cont().is(Kind::kRec)) {
          report(ViolationKind::kNestedRecursion,
                 "rec " + s.name() + " directly binds rec " + s.cont().name());
        }
        auto inner = unguarded;
        inner.insert(s.name());
        visit(s.cont(), inner);
        return;
      }
      case Kind::kPrefix: {
        ident(s.action().payload, "payload");
        std::set<std::string> none;
        visit(s.cont(), none);
        return;
      }
      case Kind::kChoice: {
        if (s.branches().empty()) report(ViolationKind::kEmptyChoice, "choice without branches");
        std::set<std::string> labels;
        for (const auto& b : s.branches()) {
          ident(b.label, "label");
          if (!labels.insert(b.label).second) {
            report(ViolationKind::kDuplicateLabel, "label " + b.label + " repeated");
          }
          std::set<std::string> none;
          visit(b.cont, none);
        }
        return;
      }
      default:
        ident(s.name(), "assertion name");
        visit(s.cont(), unguarded);
    }
  }

  std::vector<Violation> take() { return std::move(out_); }

 private:
  void ident(const std::string& token, const char* what) {
    if (!is_identifier(token)) {
      report(ViolationKind::kBadIdentifier, std::string(what) + " '" + token + "'");
    }
  }
  void report(ViolationKind kind, std::string detail) {
    out_.push_back({kind, std::move(detail)});
  }

  std::set<std::string> names_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const Protocol& s) {
  Validator v(s);
  std::set<std::string> unguarded;
  v.visit(s, unguarded);
  return v.take();
}

}  // namespace protoweave
