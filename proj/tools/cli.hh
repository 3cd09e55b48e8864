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

#ifndef PROTOWEAVE_TOOLS_CLI_HH_
#define PROTOWEAVE_TOOLS_CLI_HH_

#include <ostream>
#include <string>
#include <vector>

namespace protoweave::cli {

/// Exit statuses of the `protoweave` command.
enum Exit : int {
  kOk = 0,
  /// The requested property does not hold, or compose found nothing.
  kFailed = 1,
  kUsage = 2,
  /// Unreadable, unparsable or invalid input, or an exhausted budget.
  kInput = 3,
  kInternal = 4,
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
  /// ANSI styling of verdicts on `out`.
  bool color = false;
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, const Streams& io);

}  // namespace protoweave::cli

#endif  // PROTOWEAVE_TOOLS_CLI_HH_
