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

#ifndef PROTOWEAVE_SYNTAX_HH_
#define PROTOWEAVE_SYNTAX_HH_

#include <string>
#include <vector>

#include "protoweave/protocol.hh"

namespace protoweave {

/**
 * Concrete syntax:
 *
 *   S   ::= end | IDENT | rec IDENT . S | PFX . S | OP { LABEL : S (, LABEL : S)* }
 *   PFX ::= ! IDENT | ? IDENT | IDENT | assert(IDENT) | require(IDENT) | consume(IDENT)
 *   OP  ::= + | sel | bra
 *
 * A bare IDENT followed by "." is a neutral action; otherwise it is a
 * recursion variable. "//" starts a line comment.
 *
 * Files hold any number of `protocol NAME = S` blocks.
 */

struct NamedProtocol {
  std::string name;
  Protocol protocol;
  int line = 0;
};

/// Parses one protocol term, then freshens binders and validates. Throws
/// Error(kSyntax) with "origin:line:col" or Error(kValidation).
Protocol parse_protocol(const std::string& text, const std::string& origin = "<input>");

/// Parses a sequence of `protocol NAME = S` blocks.
std::vector<NamedProtocol> parse_file(const std::string& text,
                                      const std::string& origin = "<input>");

/// Reads and parses a file. Throws Error(kIo) when unreadable.
std::vector<NamedProtocol> load_file(const std::string& path);

/// Looks up NAME; throws Error(kNotFound).
const NamedProtocol& find_protocol(const std::vector<NamedProtocol>& file,
                                   const std::string& name);

/// Same text as to_string; parse(print(s)) == s for validated s.
std::string print(const Protocol& s);

/// `protocol NAME = S` blocks, one per line.
std::string print_file(const std::vector<NamedProtocol>& file);

}  // namespace protoweave

#endif  // PROTOWEAVE_SYNTAX_HH_
