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

#ifndef PROTOWEAVE_ENV_HH_
#define PROTOWEAVE_ENV_HH_

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace protoweave {

/**
 * A finite set of assertion names (logical atoms).
 *
 * Stored as a sorted vector; environments in practice hold a handful of names,
 * and the flat layout keeps hashing and comparison cheap.
 */
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::string> names);
  explicit Env(std::vector<std::string> names);

  bool contains(const std::string& name) const;
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  Env with(const std::string& name) const;
  Env without(const std::string& name) const;
  Env intersect(const Env& other) const;
  Env unite(const Env& other) const;
  bool subset_of(const Env& other) const;

  std::size_t hash() const;
  /// "{a,b}" form; "{}" for the empty set.
  std::string str() const;

  /// Parses a comma-separated list; the empty string yields the empty set.
  static Env parse_list(const std::string& list);

  friend bool operator==(const Env&, const Env&) = default;
  friend auto operator<=>(const Env&, const Env&) = default;

 private:
  std::vector<std::string> names_;
};

std::ostream& operator<<(std::ostream& os, const Env& env);

struct EnvHash {
  std::size_t operator()(const Env& env) const { return env.hash(); }
};

}  // namespace protoweave

#endif  // PROTOWEAVE_ENV_HH_
