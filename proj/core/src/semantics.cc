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

#include "protoweave/semantics.hh"

#include <deque>
#include <unordered_map>

namespace protoweave {

std::string Label::str() const {
  switch (kind) {
    case Kind::kAct:
      return action.str();
    case Kind::kChoose:
      return std::string(choice_op_keyword(op)) + "{" + name + "}";
    case Kind::kAssert:
      return "assert(" + name + ")";
    case Kind::kRequire:
      return "require(" + name + ")";
    case Kind::kConsume:
      return "consume(" + name + ")";
  }
  return {};
}

std::string to_string(const std::vector<Label>& trace) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ", ";
    out += trace[i].str();
  }
  return out + "]";
}

std::size_t ConfigHash::operator()(const Config& c) const {
  return c.env.hash() * 31 + c.proto.hash();
}

bool EnsembleConfig::is_end() const {
  return left.is(Kind::kEnd) && (!right || right->is(Kind::kEnd));
}

std::size_t EnsembleConfig::hash() const {
  std::size_t h = env.hash() * 31 + left.hash();
  if (right) h = h * 1000003 + right->hash() + 1;
  return h;
}

std::string EnsembleConfig::term() const {
  if (!right) return to_string(left);
  return to_string(left) + " || " + to_string(*right);
}

std::string EnsembleConfig::str() const { return "(" + env.str() + ", " + term() + ")"; }

namespace {

template <typename F>
void for_each_step(const Env& a, const Protocol& s, F&& emit) {
  // ⟨Rec⟩ steps the body and substitutes each binder back, innermost first.
  std::vector<const Protocol*> recs;
  const Protocol* cur = &s;
  while (cur->is(Kind::kRec)) {
    recs.push_back(cur);
    cur = &cur->cont();
  }
  auto out = [&](Label l, Env env, const Protocol& next) {
    Protocol p = next;
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) p = substitute(p, (*it)->name(), **it);
    emit(std::move(l), std::move(env), p);
  };
  switch (cur->kind()) {
    case Kind::kEnd:
    case Kind::kVar:
    case Kind::kRec:
      return;
    case Kind::kPrefix:
      out(Label::act(cur->action()), a, cur->cont());
      return;
    case Kind::kChoice:
      for (const auto& b : cur->branches()) out(Label::choose(cur->op(), b.label), a, b.cont);
      return;
    case Kind::kAssert:
      out(Label::asserted(cur->name()), a.with(cur->name()), cur->cont());
      return;
    case Kind::kRequire:
      if (a.contains(cur->name())) out(Label::required(cur->name()), a, cur->cont());
      return;
    case Kind::kConsume:
      if (a.contains(cur->name())) {
        out(Label::consumed(cur->name()), a.without(cur->name()), cur->cont());
      }
      return;
  }
}

}  // namespace

Successors<Config> step(const Config& c) {
  Successors<Config> out;
  for_each_step(c.env, c.proto, [&](Label l, Env env, const Protocol& next) {
    out.push_back({std::move(l), Config{std::move(env), next}});
  });
  return out;
}

std::vector<Label> enabled(const Config& c) {
  std::vector<Label> out;
  for_each_step(c.env, c.proto, [&](Label l, const Env&, const Protocol&) {
    out.push_back(std::move(l));
  });
  return out;
}

Successors<EnsembleConfig> ensemble_step(const EnsembleConfig& c) {
  Successors<EnsembleConfig> out;
  for_each_step(c.env, c.left, [&](Label l, Env env, const Protocol& next) {
    EnsembleConfig n = c;
    n.env = std::move(env);
    n.left = next;
    out.push_back({std::move(l), std::move(n)});
  });
  if (c.right) {
    for_each_step(c.env, *c.right, [&](Label l, Env env, const Protocol& next) {
      EnsembleConfig n = c;
      n.env = std::move(env);
      n.right = next;
      out.push_back({std::move(l), std::move(n)});
    });
  }
  return out;
}

std::optional<std::size_t> LtsGraph::find(const EnsembleConfig& c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] == c) return i;
  }
  return std::nullopt;
}

std::vector<Label> LtsGraph::path_to(std::size_t node) const {
  std::vector<std::optional<std::size_t>> via(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  std::deque<std::size_t> queue{initial};
  seen[initial] = true;
  while (!queue.empty() && !seen[node]) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t e : out[cur]) {
      std::size_t to = edges[e].to;
      if (seen[to]) continue;
      seen[to] = true;
      via[to] = e;
      queue.push_back(to);
    }
  }
  std::vector<Label> path;
  for (std::size_t cur = node; cur != initial && via[cur];) {
    const Edge& e = edges[*via[cur]];
    path.push_back(e.label);
    cur = e.from;
  }
  return {path.rbegin(), path.rend()};
}

LtsGraph explore(const EnsembleConfig& c, std::size_t cap) {
  LtsGraph g;
  std::unordered_map<EnsembleConfig, std::size_t, EnsembleConfigHash> index;
  g.nodes.push_back(c);
  g.out.emplace_back();
  index.emplace(c, 0);
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    auto succ = ensemble_step(g.nodes[cur]);
    ++g.expanded;
    for (auto& [label, next] : succ) {
      std::size_t to;
      auto it = index.find(next);
      if (it != index.end()) {
        to = it->second;
      } else if (g.nodes.size() >= cap) {
        g.truncated = true;
        continue;
      } else {
        to = g.nodes.size();
        index.emplace(next, to);
        g.nodes.push_back(std::move(next));
        g.out.emplace_back();
      }
      g.out[cur].push_back(g.edges.size());
      g.edges.push_back({cur, std::move(label), to});
    }
  }
  return g;
}

LtsGraph explore(const Config& c, std::size_t cap) { return explore(EnsembleConfig(c), cap); }

bool is_stuck(const Config& c) { return is_stuck(EnsembleConfig(c)); }

bool is_stuck(const EnsembleConfig& c) {
  if (c.is_end()) return false;
  return ensemble_step(c).empty();
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kTrue:
      return "true";
    case Verdict::kFalse:
      return "false";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

ProgressResult has_progress(const Protocol& s, std::size_t cap) {
  return has_progress_from(EnsembleConfig(Env{}, s), cap);
}

ProgressResult has_progress_from(const EnsembleConfig& c, std::size_t cap) {
  LtsGraph g = explore(c, cap);
  ProgressResult r;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.out[i].empty() && is_stuck(g.nodes[i])) {
      r.verdict = Verdict::kFalse;
      r.witness = g.path_to(i);
      r.stuck = g.nodes[i];
      return r;
    }
  }
  r.verdict = g.truncated ? Verdict::kInconclusive : Verdict::kTrue;
  return r;
}

std::string format_trace(const LtsGraph& g) {
  std::string out;
  for (const auto& e : g.edges) {
    const auto& n = g.nodes[e.to];
    out += std::to_string(e.from) + " -> " + std::to_string(e.to) + " : " + e.label.str() +
           " ⊢ " + n.env.str() + " ⊢ " + n.term() + "\n";
  }
  return out;
}

}  // namespace protoweave
