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

#include "support/corpus.hh"

#include <map>

namespace protoweave::testing {
namespace {

const char* const kFiles[] = {"intro", "bank", "recursion", "branching", "completeness",
                              "appendix"};

const std::vector<NamedProtocol>& file(const std::string& name) {
  static std::map<std::string, std::vector<NamedProtocol>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_file(corpus_path(name))).first;
  return it->second;
}

}  // namespace

std::string corpus_path(const std::string& name) {
  return std::string(PROTOWEAVE_CORPUS_DIR) + "/" + name + ".proto-ic";
}

Protocol corpus(const std::string& ref) {
  auto colon = ref.find(':');
  return find_protocol(file(ref.substr(0, colon)), ref.substr(colon + 1)).protocol;
}

const std::vector<CorpusEntry>& corpus_all() {
  static const std::vector<CorpusEntry> all = [] {
    std::vector<CorpusEntry> out;
    for (const char* f : kFiles) {
      for (const auto& np : file(f)) out.push_back({std::string(f) + ":" + np.name, np.protocol});
    }
    return out;
  }();
  return all;
}

const std::vector<CorpusPair>& corpus_pairs() {
  static const std::vector<CorpusPair> pairs = {
      {"intro:i1", "intro:i2"},
      {"recursion:two_ends", "recursion:send_int"},
      {"recursion:loop_p1", "recursion:loop_p2"},
      {"recursion:loop_p1", "recursion:once_p2"},
      {"recursion:nested_left", "recursion:nested_right"},
      {"bank:pintan", "bank:bank"},
      {"branching:auth", "branching:guarded"},
      {"branching:services", "branching:payments"},
      {"branching:grant", "branching:use"},
      {"completeness:session", "completeness:account"},
      {"completeness:session_loop", "completeness:account"},
      {"appendix:forward_user", "appendix:forward_instrument"},
      {"appendix:instrument", "appendix:user"},
  };
  return pairs;
}

}  // namespace protoweave::testing
