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

#include "oracle/generator.hh"

#include <utility>

namespace protoweave::oracle {

Protocol Generator::next() {
  while (true) {
    std::vector<std::string> scope;
    Protocol p = gen(options_.max_depth, scope, false, false);
    if (validate(p).empty()) return p;
  }
}

Protocol Generator::gen(int depth, std::vector<std::string>& scope, bool guarded, bool under_rec) {
  static const char* const kNames[] = {"x", "y", "z"};
  static const char* const kLabels[] = {"l1", "l2", "l3"};

  if (depth <= 0 || pick(6) == 0) {
    if (guarded && !scope.empty() && pick(10) < 7) {
      return Protocol::var(scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))]);
    }
    return Protocol::end();
  }

  const int assertion = options_.names > 0 ? options_.assertion_weight : 0;
  const int total = 4 + assertion + (under_rec ? 0 : 1);
  int roll = pick(total);
  if (roll < 2) {
    int polarity = pick(options_.neutral_actions ? 3 : 2);
    std::string payload = polarity == 0 ? "a" : polarity == 1 ? "b" : "c";
    Action act = polarity == 0   ? Action::send(payload)
                 : polarity == 1 ? Action::receive(payload)
                                 : Action::neutral(payload);
    return Protocol::prefix(std::move(act), gen(depth - 1, scope, true, false));
  }
  if (roll < 4) {
    int n = 1 + pick(3);
    ChoiceOp op = options_.neutral_actions ? static_cast<ChoiceOp>(pick(3))
                                           : static_cast<ChoiceOp>(1 + pick(2));
    std::vector<Branch> branches;
    for (int i = 0; i < n; ++i) branches.push_back({kLabels[i], gen(depth - 1, scope, true, false)});
    return Protocol::choice(op, std::move(branches));
  }
  if (roll < 4 + assertion) {
    std::string name = kNames[pick(options_.names)];
    Protocol cont = gen(depth - 1, scope, guarded, false);
    switch (pick(3)) {
      case 0:
        return Protocol::assert_(std::move(name), std::move(cont));
      case 1:
        return Protocol::require(std::move(name), std::move(cont));
      default:
        return Protocol::consume(std::move(name), std::move(cont));
    }
  }
  std::string var = "t" + std::to_string(fresh_++);
  scope.push_back(var);
  Protocol body = gen(depth - 1, scope, false, true);
  scope.pop_back();
  return Protocol::rec(std::move(var), std::move(body));
}

}  // namespace protoweave::oracle
