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

#ifndef PROTOWEAVE_ERROR_HH_
#define PROTOWEAVE_ERROR_HH_

#include <stdexcept>
#include <string>
#include <string_view>

namespace protoweave {

enum class ErrorCategory {
  kSyntax,
  kValidation,
  kCapture,
  kNotRecursion,
  kUndualizable,
  kInvalidInput,
  kBudget,
  kSchema,
  kUnguardedCycle,
  kNotFound,
  kIo,
  kUsage,
  kInternal,
};

/// Machine-readable category name, e.g. "syntax" or "unguarded-cycle".
std::string_view category_name(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace protoweave

#endif  // PROTOWEAVE_ERROR_HH_
