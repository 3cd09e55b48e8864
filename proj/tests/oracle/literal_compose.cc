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

#include "oracle/literal_compose.hh"

#include <map>
#include <utility>
#include <vector>

#include "oracle/wa_oracle.hh"
#include "protoweave/syntax.hh"

namespace protoweave::oracle {
namespace {

using Vars = std::vector<std::pair<std::string, bool>>;
using Results = std::vector<Protocol>;

std::string vars_key(const Vars& v) {
  std::string out;
  for (const auto& [name, used] : v) out += name + (used ? "*," : ",");
  return out;
}

class Literal {
 public:
  explicit Literal(Mode mode) : weak_(mode_has_weak(mode)), corr_(mode_has_correlating(mode)) {}

  Results derive(const Vars& tl, const Vars& tr, const Env& a, const Protocol& s1,
                 const Protocol& s2, bool swapped, std::size_t depth) {
    if (depth == 0) return {};
    std::string key = vars_key(tl) + "|" + vars_key(tr) + "|" + a.str() + "|" + print(s1) +
                      "|" + print(s2) + "|" + (swapped ? "1" : "0") + std::to_string(depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    Results out;
    auto add = [&](Protocol p) {
      for (const auto& q : out) {
        if (q == p) return;
      }
      out.push_back(std::move(p));
    };
    const std::size_t d = depth - 1;

    switch (s1.kind()) {
      case Kind::kPrefix:
        for (auto& r : derive(tl, tr, a, s1.cont(), s2, false, d)) {
          add(Protocol::prefix(s1.action(), r));
        }
        break;
      case Kind::kRequire:
        if (a.contains(s1.name())) {
          for (auto& r : derive(tl, tr, a, s1.cont(), s2, false, d)) {
            add(Protocol::require(s1.name(), r));
          }
        }
        break;
      case Kind::kConsume:
        if (a.contains(s1.name())) {
          for (auto& r : derive(tl, tr, a.without(s1.name()), s1.cont(), s2, false, d)) {
            add(Protocol::consume(s1.name(), r));
          }
        }
        break;
      case Kind::kAssert:
        for (auto& r : derive(tl, tr, a.with(s1.name()), s1.cont(), s2, false, d)) {
          add(Protocol::assert_(s1.name(), r));
        }
        break;
      case Kind::kChoice:
        branching(tl, tr, a, s1, s2, d, add);
        break;
      case Kind::kRec:
        if (s2.is(Kind::kRec)) {
          Vars pushed = tl;
          pushed.emplace_back(s1.name(), false);
          for (auto& r : derive(pushed, tr, a, s1.cont(), s2, false, d)) {
            Protocol p = Protocol::rec(s1.name(), r);
            if (semantic_well_asserted(a, p).ok) add(p);
          }
        }
        for (std::size_t k = 0; k < tr.size(); ++k) {
          bool suffix_unused = true;
          for (std::size_t j = k; j < tr.size(); ++j) suffix_unused = suffix_unused && !tr[j].second;
          if (!suffix_unused) continue;
          Vars marked = tr;
          marked[k].second = true;
          Protocol body = substitute(s1.cont(), s1.name(), Protocol::var(tr[k].first));
          for (auto& r : derive(tl, marked, a, body, s2, false, d)) add(r);
        }
        if (s2.is(Kind::kEnd) && s1.closed() && semantic_well_asserted(a, s1).ok) add(s1);
        break;
      case Kind::kVar:
        if (s2.is(Kind::kVar) && s2.name() == s1.name() &&
            (used_in(tl, s1.name()) || used_in(tr, s1.name()))) {
          add(s1);
        }
        break;
      case Kind::kEnd:
        if (s2.is(Kind::kEnd)) add(s1);
        break;
    }
    if (!swapped) {
      for (auto& r : derive(tr, tl, a, s2, s1, true, d)) add(r);
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  static bool used_in(const Vars& v, const std::string& name) {
    for (const auto& [n, used] : v) {
      if (n == name && used) return true;
    }
    return false;
  }

  // Every way of picking one protocol per slot.
  static std::vector<std::vector<Protocol>> product(const std::vector<Results>& slots) {
    std::vector<std::vector<Protocol>> out{{}};
    for (const auto& slot : slots) {
      std::vector<std::vector<Protocol>> next;
      for (const auto& prefix : out) {
        for (const auto& p : slot) {
          auto row = prefix;
          row.push_back(p);
          next.push_back(std::move(row));
        }
      }
      out = std::move(next);
    }
    return out;
  }

  template <typename Add>
  void branching(const Vars& tl, const Vars& tr, const Env& a, const Protocol& s1,
                 const Protocol& s2, std::size_t d, Add& add) {
    const auto& bs = s1.branches();
    std::vector<Results> per;
    for (const auto& b : bs) per.push_back(derive(tl, tr, a, b.cont, s2, false, d));

    bool all = true;
    bool some = false;
    for (const auto& r : per) {
      all = all && !r.empty();
      some = some || !r.empty();
    }
    if (all) {
      for (const auto& row : product(per)) {
        std::vector<Branch> out;
        for (std::size_t i = 0; i < bs.size(); ++i) out.push_back({bs[i].label, row[i]});
        add(Protocol::choice(s1.op(), std::move(out)));
      }
    }
    if (weak_ && some && !all) {
      bool passable = true;
      std::vector<Results> slots;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        if (per[i].empty()) {
          passable = passable && semantic_well_asserted(a, bs[i].cont).ok;
          slots.push_back({bs[i].cont});
        } else {
          slots.push_back(per[i]);
        }
      }
      if (passable) {
        for (const auto& row : product(slots)) {
          std::vector<Branch> out;
          for (std::size_t i = 0; i < bs.size(); ++i) out.push_back({bs[i].label, row[i]});
          add(Protocol::choice(s1.op(), std::move(out)));
        }
      }
    }
    if (corr_ && s2.is(Kind::kChoice)) {
      const auto& cs = s2.branches();
      std::vector<bool> covered(cs.size(), false);
      std::vector<Results> slots;
      std::vector<std::pair<std::size_t, std::size_t>> where;
      bool ok = true;
      for (std::size_t i = 0; i < bs.size() && ok; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < cs.size(); ++j) {
          Results r = derive(tl, tr, a, bs[i].cont, cs[j].cont, false, d);
          if (r.empty()) continue;
          any = true;
          covered[j] = true;
          slots.push_back(std::move(r));
          where.emplace_back(i, j);
        }
        ok = any;
      }
      for (bool c : covered) ok = ok && c;
      if (ok) {
        for (const auto& row : product(slots)) {
          std::vector<Branch> outer;
          for (std::size_t i = 0; i < bs.size(); ++i) {
            std::vector<Branch> inner;
            for (std::size_t k = 0; k < where.size(); ++k) {
              if (where[k].first == i) inner.push_back({cs[where[k].second].label, row[k]});
            }
            outer.push_back({bs[i].label, Protocol::choice(s2.op(), std::move(inner))});
          }
          add(Protocol::choice(s1.op(), std::move(outer)));
        }
      }
    }
  }

  bool weak_;
  bool corr_;
  std::map<std::string, Results> memo_;
};

}  // namespace

std::set<std::string> literal_compose(const Protocol& s1, const Protocol& s2, const Env& a,
                                      Mode mode, std::size_t max_depth) {
  Protocol right = freshen_against(s2, bound_vars(s1));
  Literal lit(mode);
  std::set<std::string> out;
  for (const auto& r : lit.derive({}, {}, a, s1, right, false, max_depth)) {
    out.insert(print(alpha_canonicalize(freshen(r))));
  }
  return out;
}

}  // namespace protoweave::oracle
