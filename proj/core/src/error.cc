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

#include "protoweave/error.hh"

namespace protoweave {

std::string_view category_name(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kSyntax:
      return "syntax";
    case ErrorCategory::kValidation:
      return "validation";
    case ErrorCategory::kCapture:
      return "capture";
    case ErrorCategory::kNotRecursion:
      return "not-a-recursion";
    case ErrorCategory::kUndualizable:
      return "undualizable";
    case ErrorCategory::kInvalidInput:
      return "invalid-input";
    case ErrorCategory::kBudget:
      return "budget";
    case ErrorCategory::kSchema:
      return "schema";
    case ErrorCategory::kUnguardedCycle:
      return "unguarded-cycle";
    case ErrorCategory::kNotFound:
      return "not-found";
    case ErrorCategory::kIo:
      return "io";
    case ErrorCategory::kUsage:
      return "usage";
    case ErrorCategory::kInternal:
      return "internal";
  }
  return "internal";
}

}  // namespace protoweave
