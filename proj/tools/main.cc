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

#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hh"

int main(int argc, char** argv) {
  const char* color = std::getenv("IC_COLOR");
  bool styled = isatty(STDOUT_FILENO) != 0 && !(color != nullptr && std::strcmp(color, "0") == 0);
  std::vector<std::string> args(argv + 1, argv + argc);
  return protoweave::cli::run(args, {std::cout, std::cerr, styled});
}
