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

#include <benchmark/benchmark.h>

#include "corpus.hh"
#include "protoweave/compose.hh"

namespace protoweave {
namespace {

void BM_ComposeBank(benchmark::State& state) {
  Protocol l = bench::corpus("bank:pintan");
  Protocol r = bench::corpus("bank:bank");
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(l, r, {}, Mode::kWeak));
  }
}
BENCHMARK(BM_ComposeBank);

void BM_ComposeInstrumentUser(benchmark::State& state) {
  Protocol l = bench::corpus("appendix:instrument");
  Protocol r = bench::corpus("appendix:user");
  auto mode = static_cast<Mode>(state.range(0));
  for (auto _ : state) {
    auto res = compose(l, r, {}, mode);
    state.counters["visited"] = static_cast<double>(res.visited);
  }
  state.SetLabel(mode_name(mode));
}
BENCHMARK(BM_ComposeInstrumentUser)->DenseRange(0, 3);

void BM_ComposeSessionAll(benchmark::State& state) {
  Protocol l = bench::corpus("completeness:session_loop");
  Protocol r = bench::corpus("completeness:account");
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(l, r, {}, Mode::kAll));
  }
}
BENCHMARK(BM_ComposeSessionAll);

}  // namespace
}  // namespace protoweave
