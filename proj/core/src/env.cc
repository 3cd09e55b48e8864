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

#include "protoweave/env.hh"

#include <algorithm>
#include <functional>
#include <iterator>
#include <sstream>

namespace protoweave {

Env::Env(std::initializer_list<std::string> names) : Env(std::vector<std::string>(names)) {}

Env::Env(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool Env::contains(const std::string& name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

Env Env::with(const std::string& name) const {
  Env out;
  out.names_.reserve(names_.size() + 1);
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  out.names_.assign(names_.begin(), it);
  if (it == names_.end() || *it != name) out.names_.push_back(name);
  out.names_.insert(out.names_.end(), it, names_.end());
  return out;
}

Env Env::without(const std::string& name) const {
  Env out;
  out.names_.reserve(names_.size());
  for (const auto& n : names_) {
    if (n != name) out.names_.push_back(n);
  }
  return out;
}

Env Env::intersect(const Env& other) const {
  Env out;
  std::set_intersection(names_.begin(), names_.end(), other.names_.begin(),
                        other.names_.end(), std::back_inserter(out.names_));
  return out;
}

Env Env::unite(const Env& other) const {
  Env out;
  std::set_union(names_.begin(), names_.end(), other.names_.begin(), other.names_.end(),
                 std::back_inserter(out.names_));
  return out;
}

bool Env::subset_of(const Env& other) const {
  return std::includes(other.names_.begin(), other.names_.end(), names_.begin(),
                       names_.end());
}

std::size_t Env::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& n : names_) {
    h ^= std::hash<std::string>()(n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string Env::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ",";
    out += names_[i];
  }
  return out + "}";
}

Env Env::parse_list(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    names.push_back(item.substr(b, e - b + 1));
  }
  return Env(std::move(names));
}

std::ostream& operator<<(std::ostream& os, const Env& env) { return os << env.str(); }

}  // namespace protoweave
