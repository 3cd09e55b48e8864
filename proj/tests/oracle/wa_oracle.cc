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

#include "oracle/wa_oracle.hh"

#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "protoweave/semantics.hh"

namespace protoweave::oracle {
namespace {

// The construct a configuration performs next, looking through one unfolding.
const Protocol& head(const Protocol& s) { return s.is(Kind::kRec) ? s.cont() : s; }

}  // namespace

WaVerdict semantic_well_asserted(const Env& a, const Protocol& s) {
  std::vector<Config> nodes{{a, s}};
  std::unordered_map<Config, std::size_t, ConfigHash> index{{nodes[0], 0}};
  std::vector<std::vector<std::size_t>> succ(1);
  for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
    const Config c = nodes[cur];
    const Protocol& h = head(c.proto);
    if ((h.is(Kind::kRequire) || h.is(Kind::kConsume)) && !c.env.contains(h.name())) {
      return {false, std::nullopt};
    }
    for (auto& [label, next] : step(c)) {
      auto [it, fresh] = index.emplace(next, nodes.size());
      if (fresh) {
        nodes.push_back(next);
        succ.emplace_back();
      }
      succ[cur].push_back(it->second);
    }
  }

  auto on_cycle = [&](std::size_t start) {
    std::vector<bool> seen(nodes.size(), false);
    std::deque<std::size_t> queue(succ[start].begin(), succ[start].end());
    while (!queue.empty()) {
      std::size_t n = queue.front();
      queue.pop_front();
      if (n == start) return true;
      if (seen[n]) continue;
      seen[n] = true;
      for (std::size_t m : succ[n]) queue.push_back(m);
    }
    return false;
  };

  WaVerdict v{true, std::nullopt};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Protocol& p = nodes[i].proto;
    bool leaf = p.is(Kind::kEnd) || p.is(Kind::kVar);
    if (!leaf && !(p.is(Kind::kRec) && on_cycle(i))) continue;
    v.post = v.post ? v.post->intersect(nodes[i].env) : nodes[i].env;
  }
  return v;
}

}  // namespace protoweave::oracle
