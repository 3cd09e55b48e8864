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

#include "protoweave/artifacts.hh"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "protoweave/error.hh"

namespace protoweave {

namespace {

using nlohmann::json;

const std::set<std::string>& transition_kinds() {
  static const std::set<std::string> kinds = {"send",  "receive", "action", "select",
                                              "offer", "plain",   "epsilon"};
  return kinds;
}

bool is_choice_kind(const std::string& k) {
  return k == "select" || k == "offer" || k == "plain";
}

const char* polarity_kind(Polarity p) {
  switch (p) {
    case Polarity::kSend:
      return "send";
    case Polarity::kReceive:
      return "receive";
    case Polarity::kNeutral:
      return "action";
  }
  return "action";
}

const char* op_kind(ChoiceOp op) {
  switch (op) {
    case ChoiceOp::kSelect:
      return "select";
    case ChoiceOp::kOffer:
      return "offer";
    case ChoiceOp::kPlain:
      return "plain";
  }
  return "plain";
}

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCategory::kSchema, msg); }

class FsmBuilder {
 public:
  explicit FsmBuilder(std::string name) { f_.name = std::move(name); }

  Fsm run(const Protocol& s) {
    if (s.is(Kind::kEnd)) {
      new_state();
    } else if (s.is(Kind::kAssert) || s.is(Kind::kRequire) || s.is(Kind::kConsume)) {
      // A leading chain needs a state of its own to hang from.
      std::string id = new_state();
      std::vector<Annotation> ann;
      std::string to = dest(s, ann);
      add(id, to, "epsilon", to == kStop ? "stop" : "enter", std::move(ann));
    } else {
      std::vector<Annotation> ann;
      dest(s, ann);
    }
    f_.initial = "s0";
    std::stable_sort(f_.transitions.begin(), f_.transitions.end(),
                     [](const FsmTransition& a, const FsmTransition& b) {
                       return std::stoul(a.from.substr(1)) < std::stoul(b.from.substr(1));
                     });
    return std::move(f_);
  }

 private:
  std::string new_state() {
    std::string id = "s" + std::to_string(next_++);
    f_.states.push_back(id);
    return id;
  }

  void add(const std::string& from, const std::string& to, const std::string& kind,
           const std::string& label, std::vector<Annotation> ann) {
    f_.transitions.push_back({from, to, kind, label, std::move(ann)});
  }

  std::string dest(const Protocol& s, std::vector<Annotation>& ann) {
    const Protocol* cur = &s;
    while (cur->is(Kind::kAssert) || cur->is(Kind::kRequire) || cur->is(Kind::kConsume)) {
      ann.push_back({cur->is(Kind::kAssert)    ? "assert"
                     : cur->is(Kind::kRequire) ? "require"
                                               : "consume",
                     cur->name()});
      cur = &cur->cont();
    }
    switch (cur->kind()) {
      case Kind::kEnd:
        return kStop;
      case Kind::kVar: {
        auto it = recs_.find(cur->name());
        if (it == recs_.end()) {
          throw Error(ErrorCategory::kInvalidInput, "free variable " + cur->name());
        }
        return it->second;
      }
      case Kind::kRec:
        return recursion(*cur);
      default:
        return decision(*cur, nullptr);
    }
  }

  std::string recursion(const Protocol& r) {
    const Protocol& body = r.cont();
    auto saved = recs_.find(r.name()) == recs_.end()
                     ? std::optional<std::string>()
                     : std::optional<std::string>(recs_[r.name()]);
    std::string id;
    if (body.is(Kind::kPrefix) || body.is(Kind::kChoice)) {
      id = decision(body, &r.name());
    } else {
      id = new_state();
      recs_[r.name()] = id;
      std::vector<Annotation> ann;
      std::string to = dest(body, ann);
      add(id, to, "epsilon", to == kStop ? "stop" : "enter", std::move(ann));
    }
    if (saved) {
      recs_[r.name()] = *saved;
    } else {
      recs_.erase(r.name());
    }
    return id;
  }

  std::string decision(const Protocol& s, const std::string* binds) {
    std::string id = new_state();
    if (binds) recs_[*binds] = id;
    if (s.is(Kind::kPrefix)) {
      std::vector<Annotation> ann;
      std::string to = dest(s.cont(), ann);
      add(id, to, polarity_kind(s.action().polarity), s.action().payload, std::move(ann));
    } else {
      for (const auto& b : s.branches()) {
        std::vector<Annotation> ann;
        std::string to = dest(b.cont, ann);
        add(id, to, op_kind(s.op()), b.label, std::move(ann));
      }
    }
    return id;
  }

  Fsm f_;
  std::size_t next_ = 0;
  std::unordered_map<std::string, std::string> recs_;
};

}  // namespace

void check_fsm(const Fsm& f) {
  if (f.name.empty()) schema("FSM name is empty");
  std::set<std::string> states;
  for (const auto& s : f.states) {
    if (s.empty() || s == kStop) schema("invalid state id '" + s + "'");
    if (!states.insert(s).second) schema("state " + s + " declared twice");
  }
  if (!states.count(f.initial)) schema("initial state '" + f.initial + "' is not declared");
  for (const auto& t : f.transitions) {
    if (!states.count(t.from)) schema("transition from undeclared state '" + t.from + "'");
    if (t.to != kStop && !states.count(t.to)) {
      schema("transition to undeclared state '" + t.to + "'");
    }
    if (!transition_kinds().count(t.kind)) schema("unknown transition kind '" + t.kind + "'");
    if (t.label.empty()) schema("transition from " + t.from + " has an empty label");
    if (t.kind == "epsilon" && t.label != "enter" && t.label != "stop") {
      schema("epsilon transition labelled '" + t.label + "'");
    }
    for (const auto& a : t.annotations) {
      if (a.kind != "assert" && a.kind != "require" && a.kind != "consume") {
        schema("unknown annotation kind '" + a.kind + "'");
      }
      if (a.name.empty()) schema("annotation without a name");
    }
  }
}

Fsm to_fsm(const Protocol& s, const std::string& name) {
  auto violations = validate(s);
  if (!violations.empty()) {
    throw Error(ErrorCategory::kInvalidInput, "invalid protocol: " + violations.front().str());
  }
  if (!s.closed()) {
    throw Error(ErrorCategory::kInvalidInput, "protocol has free variable " + s.free_vars().front());
  }
  return FsmBuilder(name).run(s);
}

// -- DOT ---------------------------------------------------------------------

std::string emit_dot(const Fsm& f) {
  check_fsm(f);
  std::ostringstream out;
  out << "digraph \"" << f.name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (const auto& s : f.states) {
    out << "  \"" << s << "\"";
    if (s == f.initial) out << " [shape=doublecircle]";
    out << ";\n";
  }
  bool stop = std::any_of(f.transitions.begin(), f.transitions.end(),
                          [](const FsmTransition& t) { return t.to == kStop; });
  if (stop) out << "  \"" << kStop << "\" [shape=point];\n";
  for (const auto& t : f.transitions) {
    std::string label;
    if (!t.annotations.empty()) {
      label += "[";
      for (std::size_t i = 0; i < t.annotations.size(); ++i) {
        if (i) label += ", ";
        label += t.annotations[i].kind + " " + t.annotations[i].name;
      }
      label += "] ";
    }
    label += t.kind + ":" + t.label;
    out << "  \"" << t.from << "\" -> \"" << t.to << "\" [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// -- JSON --------------------------------------------------------------------

std::string emit_fsm_json(const Fsm& f) {
  check_fsm(f);
  json j;
  j["name"] = f.name;
  j["states"] = f.states;
  j["initial"] = f.initial;
  j["transitions"] = json::array();
  for (const auto& t : f.transitions) {
    json jt;
    jt["from"] = t.from;
    jt["to"] = t.to;
    jt["kind"] = t.kind;
    jt["label"] = t.label;
    jt["annotations"] = json::array();
    for (const auto& a : t.annotations) jt["annotations"].push_back({{"kind", a.kind}, {"name", a.name}});
    j["transitions"].push_back(std::move(jt));
  }
  return j.dump();
}

namespace {

std::string get_string(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
    schema(where + ": missing string field \"" + key + "\"");
  }
  return j[key].get<std::string>();
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
    schema(where + ": missing array field \"" + key + "\"");
  }
  return j[key];
}

}  // namespace

Fsm parse_fsm_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema("top level must be an object");
  Fsm f;
  f.name = get_string(j, "name", "fsm");
  f.initial = get_string(j, "initial", "fsm");
  for (const auto& s : get_array(j, "states", "fsm")) {
    if (!s.is_string()) schema("fsm: state ids must be strings");
    f.states.push_back(s.get<std::string>());
  }
  std::size_t i = 0;
  for (const auto& jt : get_array(j, "transitions", "fsm")) {
    std::string where = "transition " + std::to_string(i++);
    FsmTransition t;
    t.from = get_string(jt, "from", where);
    t.to = get_string(jt, "to", where);
    t.kind = get_string(jt, "kind", where);
    t.label = get_string(jt, "label", where);
    for (const auto& ja : get_array(jt, "annotations", where)) {
      t.annotations.push_back({get_string(ja, "kind", where), get_string(ja, "name", where)});
    }
    f.transitions.push_back(std::move(t));
  }
  check_fsm(f);
  return f;
}

// -- stub --------------------------------------------------------------------

namespace {

const char* event_type(const std::string& kind) {
  if (kind == "send" || kind == "select" || kind == "epsilon") return "internal";
  return "cast";
}

}  // namespace

std::string emit_stub(const Fsm& f) {
  check_fsm(f);
  std::ostringstream out;
  out << "-module(" << f.name << ").\n";
  out << "-behaviour(gen_statem).\n";
  out << "%% states:";
  for (const auto& s : f.states) out << " " << s;
  out << "\n\n";
  out << "init(Data) -> {ok, " << f.initial << ", Data}.\n\n";
  for (std::size_t i = 0; i < f.transitions.size(); ++i) {
    const auto& t = f.transitions[i];
    for (const auto& a : t.annotations) out << "%" << a.kind << " " << a.name << "\n";
    out << t.from << "(" << event_type(t.kind) << ", {" << t.kind << ", " << t.label
        << "}, Data) -> ";
    if (t.to == kStop) {
      out << "{stop, normal, Data}";
    } else {
      out << "{next_state, " << t.to << ", Data}";
    }
    bool last = i + 1 == f.transitions.size() || f.transitions[i + 1].from != t.from;
    out << (last ? ".\n" : ";\n");
    if (last) out << "\n";
  }
  out << "terminate(_Reason, _State, _Data) -> ok.\n";
  return out.str();
}

Fsm parse_stub(const std::string& text) {
  static const std::regex module_re(R"(^-module\(([^)]+)\)\.$)");
  static const std::regex states_re(R"(^%% states:(.*)$)");
  static const std::regex init_re(R"(^init\(Data\) -> \{ok, (\S+), Data\}\.$)");
  static const std::regex annot_re(R"(^%(assert|require|consume) (\S+)$)");
  static const std::regex clause_re(
      R"(^(\S+)\((cast|internal), \{(\w+), (\w+)\}, Data\) -> (?:\{next_state, (\S+), Data\}|(\{stop, normal, Data\}))[;.]$)");
  Fsm f;
  std::vector<Annotation> pending;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_states = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (line.empty() || line.rfind("-behaviour", 0) == 0 || line.rfind("terminate(", 0) == 0) {
      continue;
    }
    if (std::regex_match(line, m, module_re)) {
      f.name = m[1];
    } else if (std::regex_match(line, m, states_re)) {
      std::istringstream ss(m[1].str());
      std::string id;
      while (ss >> id) f.states.push_back(id);
      have_states = true;
    } else if (std::regex_match(line, m, init_re)) {
      f.initial = m[1];
    } else if (std::regex_match(line, m, annot_re)) {
      pending.push_back({m[1], m[2]});
    } else if (std::regex_match(line, m, clause_re)) {
      FsmTransition t;
      t.from = m[1];
      t.kind = m[3];
      t.label = m[4];
      t.to = m[6].matched ? std::string(kStop) : m[5].str();
      if (event_type(t.kind) != m[2].str()) {
        schema("line " + std::to_string(lineno) + ": event type does not match kind " + t.kind);
      }
      t.annotations = std::move(pending);
      pending.clear();
      f.transitions.push_back(std::move(t));
    } else if (line.rfind("%%", 0) == 0) {
      continue;
    } else {
      schema("line " + std::to_string(lineno) + ": unrecognised stub line '" + line + "'");
    }
  }
  if (!pending.empty()) schema("assertion comments not followed by a clause");
  if (!have_states) schema("missing '%% states:' line");
  check_fsm(f);
  return f;
}

// -- extraction --------------------------------------------------------------

namespace {

class Extractor {
 public:
  explicit Extractor(const Fsm& f) : f_(f) {
    for (std::size_t i = 0; i < f.transitions.size(); ++i) {
      out_[f.transitions[i].from].push_back(i);
    }
  }

  Protocol run() { return state(f_.initial); }

 private:
  struct Frame {
    std::string id;
    std::size_t guards;
    bool recursive = false;
  };

  static std::string var_for(const std::string& id) { return "r_" + id; }

  Protocol chain(const std::vector<Annotation>& ann, Protocol p) {
    for (auto it = ann.rbegin(); it != ann.rend(); ++it) {
      if (it->kind == "assert") {
        p = Protocol::assert_(it->name, std::move(p));
      } else if (it->kind == "require") {
        p = Protocol::require(it->name, std::move(p));
      } else {
        p = Protocol::consume(it->name, std::move(p));
      }
    }
    return p;
  }

  Protocol follow(const FsmTransition& t) {
    std::size_t guards = guards_ + (t.kind == "epsilon" ? 0 : 1);
    Protocol target;
    if (t.to == kStop) {
      target = Protocol::end();
    } else {
      auto it = std::find_if(stack_.begin(), stack_.end(),
                             [&](const Frame& fr) { return fr.id == t.to; });
      if (it != stack_.end()) {
        if (it->guards == guards) {
          throw Error(ErrorCategory::kUnguardedCycle,
                      "cycle through " + t.to + " has no guarding transition");
        }
        it->recursive = true;
        target = Protocol::var(var_for(t.to));
      } else {
        std::size_t saved = guards_;
        guards_ = guards;
        target = state(t.to);
        guards_ = saved;
      }
    }
    return chain(t.annotations, std::move(target));
  }

  Protocol state(const std::string& id) {
    stack_.push_back({id, guards_});
    Protocol body = build(id);
    bool recursive = stack_.back().recursive;
    stack_.pop_back();
    if (recursive) return Protocol::rec(var_for(id), std::move(body));
    return body;
  }

  Protocol build(const std::string& id) {
    auto it = out_.find(id);
    if (it == out_.end() || it->second.empty()) return Protocol::end();
    const auto& idx = it->second;
    const FsmTransition& first = f_.transitions[idx.front()];
    if (!is_choice_kind(first.kind)) {
      if (idx.size() != 1) {
        schema("state " + id + " mixes a " + first.kind + " transition with others");
      }
      if (first.kind == "epsilon") return follow(first);
      Polarity pol = first.kind == "send"      ? Polarity::kSend
                     : first.kind == "receive" ? Polarity::kReceive
                                               : Polarity::kNeutral;
      return Protocol::prefix({pol, first.label}, follow(first));
    }
    ChoiceOp op = first.kind == "select"  ? ChoiceOp::kSelect
                  : first.kind == "offer" ? ChoiceOp::kOffer
                                          : ChoiceOp::kPlain;
    std::set<std::string> labels;
    std::vector<Branch> branches;
    for (std::size_t i : idx) {
      const FsmTransition& t = f_.transitions[i];
      if (t.kind != first.kind) schema("state " + id + " mixes transition kinds");
      if (!labels.insert(t.label).second) schema("state " + id + " repeats label " + t.label);
      branches.push_back({t.label, follow(t)});
    }
    return Protocol::choice(op, std::move(branches));
  }

  const Fsm& f_;
  std::map<std::string, std::vector<std::size_t>> out_;
  std::vector<Frame> stack_;
  std::size_t guards_ = 0;
};

}  // namespace

Protocol extract(const Fsm& f, std::vector<std::string>* warnings) {
  check_fsm(f);
  std::set<std::string> reached{f.initial};
  std::vector<std::string> todo{f.initial};
  while (!todo.empty()) {
    std::string cur = todo.back();
    todo.pop_back();
    for (const auto& t : f.transitions) {
      if (t.from == cur && t.to != kStop && reached.insert(t.to).second) todo.push_back(t.to);
    }
  }
  if (warnings) {
    for (const auto& s : f.states) {
      if (!reached.count(s)) warnings->push_back("unreachable state " + s + " dropped");
    }
  }
  Protocol p = freshen(Extractor(f).run());
  auto violations = validate(p);
  if (!violations.empty()) {
    schema("extracted protocol is invalid: " + violations.front().str());
  }
  return alpha_canonicalize(p);
}

Protocol extract_json(const std::string& fsm_json, std::vector<std::string>* warnings) {
  return extract(parse_fsm_json(fsm_json), warnings);
}

}  // namespace protoweave
