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

#include "protoweave/assertions.hh"

#include <deque>
#include <set>

namespace protoweave {

std::string WaFailure::str() const {
  std::string out = rule + "(" + name + ") with env " + env.str() + " at ";
  if (path.empty()) return out + "top";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += " / ";
    out += path[i];
  }
  return out;
}

namespace {

struct Frame {
  std::string var;
  std::set<Env> seen;
  std::deque<Env> pending;
};

class Checker {
 public:
  std::optional<Env> eval(const Env& a, const Protocol& s) {
    switch (s.kind()) {
      case Kind::kEnd:
        return a;
      case Kind::kVar:
        for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
          if (it->var == s.name()) {
            if (!it->seen.count(a)) it->pending.push_back(a);
            break;
          }
        }
        return a;
      case Kind::kPrefix: {
        Scope scope(this, s.action().str());
        return eval(a, s.cont());
      }
      case Kind::kAssert: {
        Scope scope(this, "assert(" + s.name() + ")");
        return eval(a.with(s.name()), s.cont());
      }
      case Kind::kRequire: {
        if (!a.contains(s.name())) return fail("require", s.name(), a);
        Scope scope(this, "require(" + s.name() + ")");
        return eval(a, s.cont());
      }
      case Kind::kConsume: {
        if (!a.contains(s.name())) return fail("consume", s.name(), a);
        Scope scope(this, "consume(" + s.name() + ")");
        return eval(a.without(s.name()), s.cont());
      }
      case Kind::kChoice: {
        std::optional<Env> post;
        for (const auto& b : s.branches()) {
          Scope scope(this, std::string(choice_op_keyword(s.op())) + "{" + b.label + "}");
          auto r = eval(a, b.cont);
          if (!r) return std::nullopt;
          post = post ? post->intersect(*r) : *r;
        }
        return post;
      }
      case Kind::kRec: {
        frames_.push_back({s.name(), {}, {a}});
        std::optional<Env> post;
        bool first = true;
        while (!frames_.back().pending.empty()) {
          Env entry = frames_.back().pending.front();
          frames_.back().pending.pop_front();
          if (!frames_.back().seen.insert(entry).second) continue;
          Scope scope(this, first ? "rec " + s.name()
                                  : "rec " + s.name() + " re-entered with " + entry.str());
          first = false;
          auto r = eval(entry, s.cont());
          if (!r) {
            frames_.pop_back();
            return std::nullopt;
          }
          post = post ? post->intersect(*r) : *r;
        }
        frames_.pop_back();
        return post;
      }
    }
    return std::nullopt;
  }

  WaFailure failure;

 private:
  struct Scope {
    Scope(Checker* c, std::string head) : c(c) { c->path_.push_back(std::move(head)); }
    ~Scope() { c->path_.pop_back(); }
    Checker* c;
  };

  std::optional<Env> fail(const char* rule, const std::string& name, const Env& a) {
    failure = {path_, rule, name, a};
    return std::nullopt;
  }

  std::vector<Frame> frames_;
  std::vector<std::string> path_;
};

}  // namespace

WaResult well_asserted(const Env& a, const Protocol& s) {
  Checker checker;
  WaResult out;
  out.post = checker.eval(a, s);
  if (!out.post) out.failure = std::move(checker.failure);
  return out;
}

bool very_well_asserted(const Protocol& s) { return well_asserted(Env{}, s).ok(); }

}  // namespace protoweave
