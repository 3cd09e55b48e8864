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

#ifndef PROTOWEAVE_TESTS_ORACLE_GENERATOR_HH_
#define PROTOWEAVE_TESTS_ORACLE_GENERATOR_HH_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "protoweave/protocol.hh"

namespace protoweave::oracle {

struct GeneratorOptions {
  int max_depth = 5;
  /// Assertion names are drawn from the first `names` of x, y, z.
  int names = 3;
  /// Relative weight of assertion constructs against prefixes.
  int assertion_weight = 2;
  bool neutral_actions = true;
};

/// Random valid closed protocols.
class Generator {
 public:
  explicit Generator(std::uint32_t seed, GeneratorOptions options = {})
      : rng_(seed), options_(options) {}

  Protocol next();

 private:
  Protocol gen(int depth, std::vector<std::string>& scope, bool guarded, bool under_rec);
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937 rng_;
  GeneratorOptions options_;
  int fresh_ = 0;
};

}  // namespace protoweave::oracle

#endif  // PROTOWEAVE_TESTS_ORACLE_GENERATOR_HH_
