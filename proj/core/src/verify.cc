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

#include "protoweave/verify.hh"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace protoweave {

// -- simulation --------------------------------------------------------------

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const {
    return p.first * 1000003 ^ p.second;
  }
};

struct SimObligation {
  std::size_t edge;  // lhs edge index
  std::vector<std::size_t> succ;
};

}  // namespace

SimulationWitness simulates(const EnsembleConfig& lhs, const EnsembleConfig& rhs,
                            std::size_t cap) {
  SimulationWitness w;
  LtsGraph gl = explore(lhs, cap);
  LtsGraph gr = explore(rhs, cap);
  if (gl.truncated || gr.truncated) {
    w.verdict = Verdict::kInconclusive;
    return w;
  }
  const std::size_t pair_cap = cap * 10;
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 0}};
  std::unordered_map<std::pair<std::size_t, std::size_t>, std::size_t, PairHash> index{
      {{0, 0}, 0}};
  std::vector<std::vector<SimObligation>> obligations;
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    auto [p, q] = pairs[cur];
    std::vector<SimObligation> obs;
    for (std::size_t e : gl.out[p]) {
      SimObligation ob{e, {}};
      for (std::size_t f : gr.out[q]) {
        if (!(gr.edges[f].label == gl.edges[e].label)) continue;
        std::pair<std::size_t, std::size_t> next{gl.edges[e].to, gr.edges[f].to};
        auto it = index.find(next);
        std::size_t id;
        if (it != index.end()) {
          id = it->second;
        } else {
          if (pairs.size() >= pair_cap) {
            w.verdict = Verdict::kInconclusive;
            return w;
          }
          id = pairs.size();
          index.emplace(next, id);
          pairs.push_back(next);
        }
        ob.succ.push_back(id);
      }
      obs.push_back(std::move(ob));
    }
    obligations.push_back(std::move(obs));
  }

  // removed[i] = round in which pair i left the relation; 0 while alive.
  std::vector<std::size_t> removed(pairs.size(), 0);
  auto alive = [&](std::size_t i, std::size_t before) {
    return removed[i] == 0 || removed[i] >= before;
  };
  for (std::size_t round = 1;; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (removed[i]) continue;
      for (const auto& ob : obligations[i]) {
        bool matched = std::any_of(ob.succ.begin(), ob.succ.end(),
                                   [&](std::size_t s) { return alive(s, round); });
        if (!matched) {
          removed[i] = round;
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }

  if (removed[0] == 0) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!removed[i]) w.relation.emplace_back(gl.nodes[pairs[i].first], gr.nodes[pairs[i].second]);
    }
    return w;
  }

  w.verdict = Verdict::kFalse;
  std::size_t cur = 0;
  while (true) {
    const std::size_t round = removed[cur];
    const SimObligation* failing = nullptr;
    for (const auto& ob : obligations[cur]) {
      bool matched = std::any_of(ob.succ.begin(), ob.succ.end(),
                                 [&](std::size_t s) { return alive(s, round); });
      if (!matched) {
        failing = &ob;
        break;
      }
    }
    const auto& edge = gl.edges[failing->edge];
    if (failing->succ.empty()) {
      w.blocked = edge.label;
      w.at = gl.nodes[edge.from];
      return w;
    }
    w.path.push_back(edge.label);
    cur = *std::min_element(failing->succ.begin(), failing->succ.end(),
                            [&](std::size_t a, std::size_t b) { return removed[a] < removed[b]; });
  }
}

SimulationWitness simulates(const Config& lhs, const EnsembleConfig& rhs, std::size_t cap) {
  return simulates(EnsembleConfig(lhs), rhs, cap);
}

// -- fairness ----------------------------------------------------------------

std::string FairTriple::str() const {
  return "(" + env.str() + ", " + to_string(s) + " ; " + to_string(s0) + " || " +
         to_string(s1) + ")";
}

std::string FairnessReport::verdict() const {
  switch (status) {
    case Status::kHolds:
      return "holds";
    case Status::kHoldsToDepth:
      return "holds-to-depth(" + std::to_string(depth) + ")";
    case Status::kFails:
      return "fails";
  }
  return "fails";
}

std::string FairnessReport::witness() const {
  if (status != Status::kFails) return {};
  std::string out = "component=" + std::to_string(component);
  if (label) out += " label=" + label->str();
  out += " trace=" + to_string(trace);
  out += " reach=" + to_string(reach);
  if (state) out += " state=" + state->str();
  return out;
}

std::vector<std::pair<Label, Protocol>> component_steps(const Protocol& s) {
  std::vector<std::pair<Label, Protocol>> out;
  for (auto& [label, next] : step(Config{Env(assertion_names(s)), s})) {
    out.emplace_back(std::move(label), std::move(next.proto));
  }
  return out;
}

namespace {

struct TripleHash {
  std::size_t operator()(const FairTriple& t) const {
    std::size_t h = t.env.hash();
    h = h * 31 + t.s.hash();
    h = h * 31 + t.s0.hash();
    h = h * 31 + t.s1.hash();
    return h;
  }
};

struct ConfigPairHash {
  std::size_t operator()(const std::pair<Config, Config>& p) const {
    return ConfigHash()(p.first) * 1000003 ^ ConfigHash()(p.second);
  }
};

constexpr std::size_t kProductCap = 4096;

// Joint runs of the composition and the non-moving component on the same
// labels, looking for points where the composition performs `label`.
struct Product {
  struct State {
    Config comp;
    Config other;
    std::size_t depth = 0;
    std::size_t parent = 0;
    Label via;
    std::vector<std::size_t> succ;
    /// (composition labels r⃗ℓ target) triples reachable by doing `label` here.
    std::vector<std::size_t> targets;
    /// A step of the other component that the composition cannot follow.
    std::optional<Label> unfollowable;
    bool frontier = false;
  };

  int component = 0;
  Label label;
  std::vector<State> states;

  std::vector<Label> path_to(std::size_t i) const {
    std::vector<Label> out;
    while (i != 0) {
      out.push_back(states[i].via);
      i = states[i].parent;
    }
    return {out.rbegin(), out.rend()};
  }
};

// Ensemble states from which some run either reaches end || end or never
// stops. Everything counts as good in a truncated graph.
std::vector<bool> good_states(const LtsGraph& g) {
  const std::size_t n = g.nodes.size();
  if (g.truncated) return std::vector<bool>(n, true);
  std::vector<bool> live(n, true);
  // Nodes with an infinite path: drop nodes whose successors are all dropped.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!live[i]) continue;
      bool any = std::any_of(g.out[i].begin(), g.out[i].end(),
                             [&](std::size_t e) { return live[g.edges[e].to]; });
      if (!any) {
        live[i] = false;
        changed = true;
      }
    }
  }
  std::vector<std::vector<std::size_t>> pred(n);
  for (const auto& e : g.edges) pred[e.to].push_back(e.from);
  std::vector<bool> good(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (live[i] || g.nodes[i].is_end()) {
      good[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t q : pred[cur]) {
      if (!good[q]) {
        good[q] = true;
        queue.push_back(q);
      }
    }
  }
  return good;
}

struct Node {
  FairTriple t;
  std::size_t depth = 0;
  bool expanded = false;
  std::size_t parent = 0;
  std::vector<Label> via;
  std::vector<Product> obligations;
};

class FairnessChecker {
 public:
  FairnessChecker(bool strong, std::size_t depth) : strong_(strong), depth_(depth) {}

  FairnessReport run(const FairTriple& start) {
    intern(start, 0, 0, {});
    bool complete = true;
    for (std::size_t cur = 0; cur < nodes_.size(); ++cur) {
      if (nodes_[cur].depth >= depth_) {
        if (has_steps(nodes_[cur].t)) complete = false;
        continue;
      }
      expand(cur);
    }
    std::vector<std::size_t> removed(nodes_.size(), 0);
    for (std::size_t round = 1;; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (removed[i] || !nodes_[i].expanded) continue;
        for (const auto& ob : nodes_[i].obligations) {
          if (!satisfied(ob, [&](std::size_t n) { return removed[n] == 0 || removed[n] >= round; })) {
            removed[i] = round;
            changed = true;
            break;
          }
        }
      }
      if (!changed) break;
    }

    FairnessReport r;
    r.depth = depth_;
    r.explored = nodes_.size();
    if (removed[0] == 0) {
      r.status = complete ? FairnessReport::Status::kHolds : FairnessReport::Status::kHoldsToDepth;
      return r;
    }
    r.status = FairnessReport::Status::kFails;
    std::size_t cur = 0;
    while (true) {
      const std::size_t round = removed[cur];
      auto good = [&](std::size_t n) { return removed[n] == 0 || removed[n] >= round; };
      const Product* failing = nullptr;
      for (const auto& ob : nodes_[cur].obligations) {
        if (!satisfied(ob, good)) {
          failing = &ob;
          break;
        }
      }
      std::vector<Label> trace;
      if (!satisfied(*failing, [](std::size_t) { return true; }, &trace)) {
        r.component = failing->component;
        r.label = failing->label;
        r.state = nodes_[cur].t;
        r.trace = std::move(trace);
        r.reach = reach(cur);
        return r;
      }
      std::size_t best = std::numeric_limits<std::size_t>::max();
      std::size_t next = cur;
      for (const auto& st : failing->states) {
        for (std::size_t n : st.targets) {
          if (removed[n] != 0 && removed[n] < round && removed[n] < best) {
            best = removed[n];
            next = n;
          }
        }
      }
      if (next == cur) {
        r.component = failing->component;
        r.label = failing->label;
        r.state = nodes_[cur].t;
        r.reach = reach(cur);
        return r;
      }
      cur = next;
    }
  }

 private:
  std::vector<Label> reach(std::size_t n) const {
    std::vector<std::vector<Label>> parts;
    while (n != 0) {
      parts.push_back(nodes_[n].via);
      n = nodes_[n].parent;
    }
    std::vector<Label> out;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
      out.insert(out.end(), it->begin(), it->end());
    }
    return out;
  }

  static bool has_steps(const FairTriple& t) {
    return !component_steps(t.s0).empty() || !component_steps(t.s1).empty();
  }

  std::size_t intern(const FairTriple& t, std::size_t depth, std::size_t parent,
                     std::vector<Label> via) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    std::size_t id = nodes_.size();
    index_.emplace(t, id);
    Node n;
    n.t = t;
    n.depth = depth;
    n.parent = parent;
    n.via = std::move(via);
    nodes_.push_back(std::move(n));
    return id;
  }

  void expand(std::size_t id) {
    const FairTriple t = nodes_[id].t;
    const std::size_t depth = nodes_[id].depth;
    std::vector<Product> obligations;
    for (int i = 0; i < 2; ++i) {
      const Protocol& mover = i == 0 ? t.s0 : t.s1;
      const Protocol& other = i == 0 ? t.s1 : t.s0;
      for (const auto& [label, moved] : component_steps(mover)) {
        if (!owed(t.env, i, mover, other, label)) continue;
        Product p;
        p.component = i;
        p.label = label;
        build(p, t, other, moved, id, depth);
        obligations.push_back(std::move(p));
      }
    }
    nodes_[id].obligations = std::move(obligations);
    nodes_[id].expanded = true;
  }

  // A component step is owed when the ensemble can take it, after some run of
  // the other component, on the way to end || end or into an endless run.
  bool owed(const Env& a, int i, const Protocol& mover, const Protocol& other,
            const Label& label) {
    std::unordered_set<Config, ConfigHash> seen;
    std::deque<Config> queue;
    queue.push_back({a, other});
    seen.insert(queue.front());
    while (!queue.empty()) {
      Config cur = std::move(queue.front());
      queue.pop_front();
      for (const auto& [l, moved] : step(Config{cur.env, mover})) {
        if (!(l == label)) continue;
        EnsembleConfig e = i == 0 ? EnsembleConfig(moved.env, moved.proto, cur.proto)
                                  : EnsembleConfig(moved.env, cur.proto, moved.proto);
        if (good(e)) return true;
      }
      for (auto& [l, next] : step(cur)) {
        if (seen.size() >= kProductCap) return true;
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
    return false;
  }

  bool good(const EnsembleConfig& e) {
    auto it = good_.find(e);
    if (it != good_.end()) return it->second;
    LtsGraph g = explore(e, kDefaultCap);
    std::vector<bool> marks = good_states(g);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) good_.emplace(g.nodes[k], marks[k]);
    return marks[g.initial];
  }

  void build(Product& p, const FairTriple& t, const Protocol& other, const Protocol& moved,
             std::size_t parent, std::size_t depth) {
    std::unordered_map<std::pair<Config, Config>, std::size_t, ConfigPairHash> index;
    Product::State start;
    start.comp = {t.env, t.s};
    start.other = {t.env, other};
    index.emplace(std::make_pair(start.comp, start.other), 0);
    p.states.push_back(std::move(start));
    for (std::size_t cur = 0; cur < p.states.size(); ++cur) {
      const Config comp = p.states[cur].comp;
      const Config oth = p.states[cur].other;
      auto comp_steps = step(comp);
      for (const auto& [l, next] : comp_steps) {
        if (!(l == p.label)) continue;
        FairTriple nt{next.env, next.proto, p.component == 0 ? moved : oth.proto,
                      p.component == 0 ? oth.proto : moved};
        std::vector<Label> via = p.path_to(cur);
        via.push_back(l);
        p.states[cur].targets.push_back(intern(nt, depth + 1, parent, std::move(via)));
      }
      if (p.states[cur].depth >= kMaxPrefix) {
        p.states[cur].frontier = true;
        continue;
      }
      for (const auto& [r, onext] : step(oth)) {
        bool followed = false;
        for (const auto& [l, cnext] : comp_steps) {
          if (!(l == r)) continue;
          followed = true;
          auto key = std::make_pair(cnext, onext);
          auto it = index.find(key);
          std::size_t to;
          if (it != index.end()) {
            to = it->second;
          } else if (p.states.size() >= kProductCap) {
            p.states[cur].frontier = true;
            continue;
          } else {
            to = p.states.size();
            index.emplace(key, to);
            Product::State s;
            s.comp = cnext;
            s.other = onext;
            s.depth = p.states[cur].depth + 1;
            s.parent = cur;
            s.via = r;
            p.states.push_back(std::move(s));
          }
          p.states[cur].succ.push_back(to);
        }
        if (!followed && !p.states[cur].unfollowable) p.states[cur].unfollowable = r;
      }
    }
  }

  // Whether obligation `p` holds given which triples count as fair. On
  // failure, `trace` receives the other component's offending run.
  bool satisfied(const Product& p, const std::function<bool(std::size_t)>& good,
                 std::vector<Label>* trace = nullptr) const {
    const std::size_t n = p.states.size();
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      hit[i] = std::any_of(p.states[i].targets.begin(), p.states[i].targets.end(), good);
    }
    if (!strong_) {
      bool any = std::find(hit.begin(), hit.end(), true) != hit.end() ||
                 std::any_of(p.states.begin(), p.states.end(),
                             [](const Product::State& s) { return s.frontier; });
      if (!any && trace) trace->clear();
      return any;
    }
    if (hit[0]) return true;
    // reach[i]: a hit (or an unexplored frontier) is reachable from i.
    std::vector<bool> reachable(n, false);
    std::vector<std::vector<std::size_t>> pred(n);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s : p.states[i].succ) pred[s].push_back(i);
      if (hit[i] || p.states[i].frontier) {
        reachable[i] = true;
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (std::size_t q : pred[cur]) {
        if (!reachable[q]) {
          reachable[q] = true;
          queue.push_back(q);
        }
      }
    }
    // Runs r of the other component along which no prefix is a hit.
    std::vector<bool> seen(n, false);
    queue.push_back(0);
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      const auto& st = p.states[cur];
      if (!reachable[cur] || st.unfollowable) {
        if (trace) {
          *trace = p.path_to(cur);
          if (reachable[cur] && st.unfollowable) trace->push_back(*st.unfollowable);
        }
        return false;
      }
      for (std::size_t s : st.succ) {
        if (!seen[s] && !hit[s]) {
          seen[s] = true;
          queue.push_back(s);
        }
      }
    }
    return true;
  }

  bool strong_;
  std::size_t depth_;
  std::vector<Node> nodes_;
  std::unordered_map<FairTriple, std::size_t, TripleHash> index_;
  std::unordered_map<EnsembleConfig, bool, EnsembleConfigHash> good_;
};

}  // namespace

FairnessReport check_fair(const Protocol& s, const Protocol& s0, const Protocol& s1,
                          const Env& a, std::size_t depth) {
  return FairnessChecker(false, depth).run({a, s, s0, s1});
}

FairnessReport check_strong_fair(const Protocol& s, const Protocol& s0, const Protocol& s1,
                                 const Env& a, std::size_t depth) {
  return FairnessChecker(true, depth).run({a, s, s0, s1});
}

}  // namespace protoweave
