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

#ifndef PROTOWEAVE_BENCHMARKS_CORPUS_HH_
#define PROTOWEAVE_BENCHMARKS_CORPUS_HH_

#include <string>

#include "protoweave/syntax.hh"

namespace protoweave::bench {

// "file:name" from the corpus directory.
inline Protocol corpus(const std::string& ref) {
  auto colon = ref.find(':');
  auto file = load_file(std::string(PROTOWEAVE_CORPUS_DIR) + "/" + ref.substr(0, colon) + ".proto-ic");
  return find_protocol(file, ref.substr(colon + 1)).protocol;
}

}  // namespace protoweave::bench

#endif  // PROTOWEAVE_BENCHMARKS_CORPUS_HH_
