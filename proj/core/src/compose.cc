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

#include "protoweave/compose.hh"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "protoweave/assertions.hh"
#include "protoweave/error.hh"

namespace protoweave {

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::kStrong:
      return "strong";
    case Mode::kWeak:
      return "weak";
    case Mode::kCorrelating:
      return "corr";
    case Mode::kAll:
      return "all";
  }
  return "strong";
}

Mode parse_mode(const std::string& text) {
  if (text == "strong") return Mode::kStrong;
  if (text == "weak") return Mode::kWeak;
  if (text == "corr" || text == "correlating") return Mode::kCorrelating;
  if (text == "all") return Mode::kAll;
  throw Error(ErrorCategory::kUsage, "unknown mode '" + text + "'");
}

bool RecEnv::contains_used(const std::string& var) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const auto& e) { return e.first == var && e.second; });
}

RecEnv RecEnv::pushed(const std::string& var) const {
  RecEnv out = *this;
  out.entries.emplace_back(var, false);
  return out;
}

RecEnv RecEnv::marked(std::size_t index) const {
  RecEnv out = *this;
  out.entries.at(index).second = true;
  return out;
}

std::vector<std::size_t> RecEnv::mergeable() const {
  std::vector<std::size_t> out;
  for (std::size_t k = entries.size(); k-- > 0;) {
    if (entries[k].second) break;
    out.push_back(k);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

using Results = std::vector<Protocol>;

struct Key {
  RecEnv tx;
  RecEnv ty;
  Env a;
  Protocol x;
  Protocol y;

  friend bool operator==(const Key&, const Key&) = default;
};

std::size_t recenv_hash(const RecEnv& t) {
  std::size_t h = t.entries.size();
  for (const auto& [v, used] : t.entries) {
    h = h * 1000003 ^ (std::hash<std::string>()(v) + used);
  }
  return h;
}

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = k.x.hash();
    h = h * 31 + k.y.hash();
    h = h * 31 + k.a.hash();
    h = h * 31 + recenv_hash(k.tx);
    h = h * 31 + recenv_hash(k.ty);
    return h;
  }
};

// R is symmetric in its operand pairs, so both orientations share one entry.
Key normalized(const RecEnv& tx, const RecEnv& ty, const Env& a, const Protocol& x,
               const Protocol& y) {
  bool swap = false;
  if (x.hash() != y.hash()) {
    swap = y.hash() < x.hash();
  } else if (!(tx == ty)) {
    swap = ty < tx;
  }
  if (swap) return {ty, tx, a, y, x};
  return {tx, ty, a, x, y};
}

class Dedup {
 public:
  void add(const Protocol& p) {
    if (seen_.insert(p).second) out_.push_back(p);
  }
  void add_all(const Results& ps) {
    for (const auto& p : ps) add(p);
  }
  Results take() { return std::move(out_); }

 private:
  std::unordered_set<Protocol, ProtocolHash> seen_;
  Results out_;
};

class Search {
 public:
  Search(Mode mode, std::size_t budget, std::size_t max_notes)
      : mode_(mode), budget_(budget), max_notes_(max_notes) {}

  const Results& run(const RecEnv& tl, const RecEnv& tr, const Env& a, const Protocol& s1,
                     const Protocol& s2) {
    Key key = normalized(tl, tr, a, s1, s2);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (++visited_ > budget_) {
      throw Error(ErrorCategory::kBudget,
                  "search budget of " + std::to_string(budget_) + " nodes exceeded at " +
                      to_string(s1) + " o " + to_string(s2) + " with env " + a.str());
    }
    Dedup out;
    if (s1.is(Kind::kEnd) && s2.is(Kind::kEnd)) out.add(Protocol::end());
    if (s1.is(Kind::kVar) && s2.is(Kind::kVar) && s1.name() == s2.name() &&
        (tl.contains_used(s1.name()) || tr.contains_used(s1.name()))) {
      out.add(s1);
    }
    one_sided(tl, tr, a, s1, s2, out);
    one_sided(tr, tl, a, s2, s1, out);
    return memo_.emplace(std::move(key), out.take()).first->second;
  }

  std::size_t visited() const { return visited_; }
  std::vector<std::string> notes() const { return {notes_.begin(), notes_.end()}; }

 private:
  void note(const std::string& msg) {
    if (notes_.size() < max_notes_) notes_.insert(msg);
  }

  bool wa(const Env& a, const Protocol& s) {
    auto key = std::make_pair(a, s);
    auto it = wa_memo_.find(key);
    if (it != wa_memo_.end()) return it->second;
    bool ok = well_asserted(a, s).ok();
    wa_memo_.emplace(std::move(key), ok);
    return ok;
  }

  // Rules whose subject is the head of `x`; `tx` belongs to `x`.
  void one_sided(const RecEnv& tx, const RecEnv& ty, const Env& a, const Protocol& x,
                 const Protocol& y, Dedup& out) {
    switch (x.kind()) {
      case Kind::kEnd:
      case Kind::kVar:
        return;
      case Kind::kPrefix:
        for (const auto& s : run(tx, ty, a, x.cont(), y)) out.add(Protocol::prefix(x.action(), s));
        return;
      case Kind::kAssert:
        for (const auto& s : run(tx, ty, a.with(x.name()), x.cont(), y)) {
          out.add(Protocol::assert_(x.name(), s));
        }
        return;
      case Kind::kRequire:
        if (!a.contains(x.name())) {
          note("require(" + x.name() + ") not in " + a.str());
          return;
        }
        for (const auto& s : run(tx, ty, a, x.cont(), y)) out.add(Protocol::require(x.name(), s));
        return;
      case Kind::kConsume:
        if (!a.contains(x.name())) {
          note("consume(" + x.name() + ") not in " + a.str());
          return;
        }
        for (const auto& s : run(tx, ty, a.without(x.name()), x.cont(), y)) {
          out.add(Protocol::consume(x.name(), s));
        }
        return;
      case Kind::kChoice:
        branching(tx, ty, a, x, y, out);
        if (mode_has_correlating(mode_) && y.is(Kind::kChoice)) correlating(tx, ty, a, x, y, out);
        return;
      case Kind::kRec:
        recursion(tx, ty, a, x, y, out);
        return;
    }
  }

  // [bra], and [wbra] when enabled.
  void branching(const RecEnv& tx, const RecEnv& ty, const Env& a, const Protocol& x,
                 const Protocol& y, Dedup& out) {
    const auto& bs = x.branches();
    std::vector<Results> per(bs.size());
    bool all = true;
    bool any = false;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      per[i] = run(tx, ty, a, bs[i].cont, y);
      all = all && !per[i].empty();
      any = any || !per[i].empty();
    }
    if (all) {
      emit_product(x, per, out);
      return;
    }
    if (!mode_has_weak(mode_) || !any) return;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (!per[i].empty()) continue;
      if (!wa(a, bs[i].cont)) {
        note("[wbra] branch " + bs[i].label + " is not well-asserted from " + a.str());
        return;
      }
      per[i] = {bs[i].cont};
    }
    emit_product(x, per, out);
  }

  void emit_product(const Protocol& x, const std::vector<Results>& per, Dedup& out) {
    const auto& bs = x.branches();
    std::vector<std::size_t> idx(per.size(), 0);
    while (true) {
      std::vector<Branch> branches;
      branches.reserve(bs.size());
      for (std::size_t i = 0; i < bs.size(); ++i) branches.push_back({bs[i].label, per[i][idx[i]]});
      out.add(Protocol::choice(x.op(), std::move(branches)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == per[k].size()) idx[k++] = 0;
      if (k == idx.size()) return;
    }
  }

  // [cbra]
  void correlating(const RecEnv& tx, const RecEnv& ty, const Env& a, const Protocol& x,
                   const Protocol& y, Dedup& out) {
    const auto& xs = x.branches();
    const auto& ys = y.branches();
    // slots[i] lists (j, results) for j ∈ J_i.
    std::vector<std::vector<std::pair<std::size_t, Results>>> slots(xs.size());
    std::vector<bool> covered(ys.size(), false);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        Results r = run(tx, ty, a, xs[i].cont, ys[j].cont);
        if (r.empty()) continue;
        covered[j] = true;
        slots[i].emplace_back(j, std::move(r));
      }
      if (slots[i].empty()) {
        note("[cbra] branch " + xs[i].label + " correlates with no branch");
        return;
      }
    }
    if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
      note("[cbra] some branch of the second operand is never correlated");
      return;
    }
    // Flatten every (i, j) slot for one cartesian product.
    std::vector<const Results*> flat;
    for (const auto& s : slots) {
      for (const auto& [j, r] : s) flat.push_back(&r);
    }
    std::vector<std::size_t> idx(flat.size(), 0);
    while (true) {
      std::vector<Branch> outer;
      std::size_t f = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<Branch> inner;
        for (const auto& [j, r] : slots[i]) {
          inner.push_back({ys[j].label, (*flat[f])[idx[f]]});
          ++f;
        }
        outer.push_back({xs[i].label, Protocol::choice(y.op(), std::move(inner))});
      }
      out.add(Protocol::choice(x.op(), std::move(outer)));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == flat[k]->size()) idx[k++] = 0;
      if (k == idx.size()) return;
    }
  }

  // [rec1], [rec2], [rec3]
  void recursion(const RecEnv& tx, const RecEnv& ty, const Env& a, const Protocol& x,
                 const Protocol& y, Dedup& out) {
    const std::string& t1 = x.name();
    if (y.is(Kind::kRec)) {
      for (const auto& s : run(tx.pushed(t1), ty, a, x.cont(), y)) {
        Protocol r = Protocol::rec(t1, s);
        if (wa(a, r)) {
          out.add(r);
        } else {
          note("[rec1] rec " + t1 + " is not well-asserted from " + a.str());
        }
      }
    }
    for (std::size_t k : ty.mergeable()) {
      Protocol body = substitute(x.cont(), t1, Protocol::var(ty.entries[k].first));
      out.add_all(run(tx, ty.marked(k), a, body, y));
    }
    if (y.is(Kind::kEnd)) {
      if (!x.closed()) {
        note("[rec3] rec " + t1 + " is open");
      } else if (!wa(a, x)) {
        note("[rec3] rec " + t1 + " is not well-asserted from " + a.str());
      } else {
        out.add(x);
      }
    }
  }

  struct WaKeyHash {
    std::size_t operator()(const std::pair<Env, Protocol>& k) const {
      return k.first.hash() * 31 + k.second.hash();
    }
  };

  Mode mode_;
  std::size_t budget_;
  std::size_t max_notes_;
  std::size_t visited_ = 0;
  std::unordered_map<Key, Results, KeyHash> memo_;
  std::unordered_map<std::pair<Env, Protocol>, bool, WaKeyHash> wa_memo_;
  std::set<std::string> notes_;
};

void require_valid(const Protocol& s, const char* which) {
  auto violations = validate(s);
  if (!violations.empty()) {
    throw Error(ErrorCategory::kInvalidInput,
                std::string(which) + " operand is invalid: " + violations.front().str());
  }
  if (!s.closed()) {
    throw Error(ErrorCategory::kInvalidInput,
                std::string(which) + " operand has free variable " + s.free_vars().front());
  }
}

std::vector<std::string> all_names(const Protocol& s) {
  std::vector<std::string> names = bound_vars(s);
  names.insert(names.end(), s.free_vars().begin(), s.free_vars().end());
  return names;
}

}  // namespace

std::vector<Protocol> compose_judgement(const RecEnv& tl, const RecEnv& tr, const Env& a,
                                        const Protocol& s1, const Protocol& s2, Mode mode,
                                        std::size_t budget) {
  Search search(mode, budget, 0);
  return search.run(tl, tr, a, s1, s2);
}

CompositionResult compose(const Protocol& s1, const Protocol& s2, const Env& a, Mode mode,
                          const ComposeOptions& options) {
  require_valid(s1, "first");
  require_valid(s2, "second");
  Protocol right = freshen_against(s2, all_names(s1));

  Search search(mode, options.budget, options.max_diagnostics);
  const Results& found = search.run({}, {}, a, s1, right);

  CompositionResult out;
  out.visited = search.visited();
  out.diagnostics = search.notes();

  // Branch copies may repeat binders; freshen before counting.
  std::map<std::string, std::vector<Protocol>> classes;
  std::unordered_set<Protocol, ProtocolHash> raw_seen;
  for (const auto& r : found) {
    Protocol p = freshen(r);
    if (!raw_seen.insert(p).second) continue;
    classes[to_string(alpha_canonicalize(p))].push_back(p);
  }
  for (auto& [canon, members] : classes) {
    std::sort(members.begin(), members.end(), [](const Protocol& l, const Protocol& r) {
      return to_string(l) < to_string(r);
    });
    out.results.push_back(members.front());
    out.raw_results.insert(out.raw_results.end(), members.begin(), members.end());
  }
  out.raw_count = out.raw_results.size();
  out.canonical_count = out.results.size();

  for (const auto& r : out.raw_results) {
    auto violations = validate(r);
    if (!violations.empty()) {
      throw Error(ErrorCategory::kInternal,
                  "composition produced an invalid protocol " + to_string(r) + ": " +
                      violations.front().str());
    }
    if (a.empty() && !very_well_asserted(r)) {
      throw Error(ErrorCategory::kInternal,
                  "composition produced a protocol that is not very-well-asserted: " +
                      to_string(r));
    }
  }
  return out;
}

}  // namespace protoweave
