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

#include "cli.hh"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "protoweave/artifacts.hh"
#include "protoweave/assertions.hh"
#include "protoweave/compose.hh"
#include "protoweave/error.hh"
#include "protoweave/semantics.hh"
#include "protoweave/syntax.hh"
#include "protoweave/verify.hh"

namespace protoweave::cli {
namespace {

const char* const kGreen = "\x1b[32m";
const char* const kRed = "\x1b[31m";
const char* const kReset = "\x1b[0m";

struct Resolved {
  std::string name;
  Protocol protocol;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// FILE:NAME, or FILE alone when it holds exactly one protocol.
class Loader {
 public:
  Resolved resolve(const std::string& ref) {
    std::string path = ref;
    std::string name;
    auto colon = ref.rfind(':');
    if (colon != std::string::npos) {
      path = ref.substr(0, colon);
      name = ref.substr(colon + 1);
    }
    const auto& file = load(path);
    if (name.empty()) {
      if (file.size() != 1) {
        throw Error(ErrorCategory::kUsage,
                    path + " holds " + std::to_string(file.size()) + " protocols; use FILE:NAME");
      }
      return {file.front().name, file.front().protocol};
    }
    const auto& np = find_protocol(file, name);
    return {np.name, np.protocol};
  }

 private:
  const std::vector<NamedProtocol>& load(const std::string& path) {
    auto it = files_.find(path);
    if (it == files_.end()) it = files_.emplace(path, load_file(path)).first;
    return it->second;
  }

  std::map<std::string, std::vector<NamedProtocol>> files_;
};

struct Flags {
  std::string mode = "strong";
  std::string env;
  std::size_t cap = kDefaultCap;
  std::size_t depth = kDefaultDepth;
  std::size_t budget = kDefaultBudget;
  std::string format = "fsm";
  std::string output;
  std::string props = "progress,simulation,fair,strong-fair";
  std::string composed;
  bool allow_empty = false;
  bool raw_counts = false;
  bool from_compose = false;
  std::vector<std::string> refs;
};

class Runner {
 public:
  Runner(const Streams& io, const Flags& flags) : io_(io), flags_(flags) {}

  int check() {
    auto r = loader_.resolve(flags_.refs.at(0));
    Env a = Env::parse_list(flags_.env);
    WaResult wa = well_asserted(a, r.protocol);
    if (wa.ok()) {
      io_.out << r.name << ": " << verdict("well-asserted", true) << " " << a.str() << " -> "
              << wa.post->str() << "\n";
      return kOk;
    }
    io_.out << r.name << ": " << verdict("not well-asserted", false) << " " << a.str() << ": "
            << wa.failure.str() << "\n";
    return kFailed;
  }

  int trace() {
    EnsembleConfig start = ensemble();
    LtsGraph g = explore(start, flags_.cap);
    io_.out << format_trace(g);
    io_.out << "nodes=" << g.nodes.size() << " edges=" << g.edges.size()
            << (g.truncated ? " truncated" : " complete") << "\n";
    return g.truncated ? kFailed : kOk;
  }

  int step() {
    EnsembleConfig start = ensemble();
    auto next = ensemble_step(start);
    for (const auto& [label, c] : next) {
      io_.out << label.str() << " ⊢ " << c.env.str() << " ⊢ " << c.term() << "\n";
    }
    if (next.empty()) io_.out << (is_stuck(start) ? "stuck\n" : "terminated\n");
    return kOk;
  }

  int compose_cmd() {
    auto left = loader_.resolve(flags_.refs.at(0));
    auto right = loader_.resolve(flags_.refs.at(1));
    Mode mode = parse_mode(flags_.mode);
    CompositionResult res = run_compose(left.protocol, right.protocol, mode);
    const auto& shown = flags_.raw_counts ? res.raw_results : res.results;
    for (std::size_t i = 0; i < shown.size(); ++i) {
      io_.out << "// " << (i + 1) << "\n";
      io_.out << "protocol " << left.name << "_" << right.name << "_" << (i + 1) << " = "
              << print(shown[i]) << "\n";
    }
    io_.out << "mode=" << mode_name(mode) << " raw=" << res.raw_count
            << " canonical=" << res.canonical_count << "\n";
    if (res.canonical_count == 0) {
      for (const auto& d : res.diagnostics) io_.err << "note: " << d << "\n";
    }
    return res.canonical_count > 0 || flags_.allow_empty ? kOk : kFailed;
  }

  int verify() {
    auto left = loader_.resolve(flags_.refs.at(0));
    auto right = loader_.resolve(flags_.refs.at(1));
    Env a = Env::parse_list(flags_.env);
    std::vector<std::string> props = split(flags_.props);
    for (const auto& p : props) {
      if (p != "progress" && p != "simulation" && p != "fair" && p != "strong-fair") {
        throw Error(ErrorCategory::kUsage, "unknown property '" + p + "'");
      }
    }
    std::vector<std::pair<std::string, Protocol>> targets;
    if (flags_.from_compose) {
      CompositionResult res = run_compose(left.protocol, right.protocol, parse_mode(flags_.mode));
      for (std::size_t i = 0; i < res.results.size(); ++i) {
        targets.emplace_back(std::to_string(i + 1), res.results[i]);
      }
      if (targets.empty()) {
        io_.out << "CHECK compose " << verdict("empty", false) << "\n";
        return flags_.allow_empty ? kOk : kFailed;
      }
    } else {
      auto composed = loader_.resolve(flags_.composed);
      targets.emplace_back(composed.name, composed.protocol);
    }
    bool all = true;
    for (const auto& [tag, s] : targets) {
      for (const auto& p : props) {
        all = check_property(p, tag, s, left.protocol, right.protocol, a) && all;
      }
    }
    return all ? kOk : kFailed;
  }

  int gen() {
    auto r = loader_.resolve(flags_.refs.at(0));
    Fsm f = to_fsm(r.protocol, r.name);
    std::string text;
    if (flags_.format == "dot") {
      text = emit_dot(f);
    } else if (flags_.format == "fsm") {
      text = emit_fsm_json(f) + "\n";
    } else if (flags_.format == "stub") {
      text = emit_stub(f);
    } else {
      throw Error(ErrorCategory::kUsage, "unknown format '" + flags_.format + "'");
    }
    write(text);
    return kOk;
  }

  int extract_cmd() {
    const std::string& path = flags_.refs.at(0);
    std::string text = read_file(path);
    bool stub = path.size() >= 5 && path.compare(path.size() - 5, 5, ".stub") == 0;
    Fsm f = stub ? parse_stub(text) : parse_fsm_json(text);
    std::vector<std::string> warnings;
    Protocol s = extract(f, &warnings);
    for (const auto& w : warnings) io_.err << "warning: " << w << "\n";
    write("protocol " + f.name + " = " + print(s) + "\n");
    return kOk;
  }

 private:
  std::string verdict(const std::string& word, bool good) const {
    if (!io_.color) return word;
    return std::string(good ? kGreen : kRed) + word + kReset;
  }

  EnsembleConfig ensemble() {
    Env a = Env::parse_list(flags_.env);
    auto left = loader_.resolve(flags_.refs.at(0));
    if (flags_.refs.size() < 2) return EnsembleConfig(a, left.protocol);
    auto right = loader_.resolve(flags_.refs.at(1));
    return EnsembleConfig(a, left.protocol, freshen_against(right.protocol, bound_vars(left.protocol)));
  }

  CompositionResult run_compose(const Protocol& s1, const Protocol& s2, Mode mode) {
    ComposeOptions opts;
    opts.budget = flags_.budget;
    return compose(s1, s2, Env::parse_list(flags_.env), mode, opts);
  }

  bool check_property(const std::string& prop, const std::string& tag, const Protocol& s,
                      const Protocol& s0, const Protocol& s1, const Env& a) {
    std::string name = prop + "[" + tag + "]";
    if (prop == "progress") {
      ProgressResult r = has_progress_from(EnsembleConfig(a, s), flags_.cap);
      bool ok = r.verdict == Verdict::kTrue;
      io_.out << "CHECK " << name << " " << verdict(verdict_name(r.verdict), ok);
      if (r.verdict == Verdict::kFalse) io_.out << " " << to_string(r.witness);
      io_.out << "\n";
      return ok;
    }
    if (prop == "simulation") {
      Protocol right = freshen_against(s1, bound_vars(s0));
      SimulationWitness w = simulates(Config{a, s}, EnsembleConfig(a, s0, right), flags_.cap);
      bool ok = w.verdict == Verdict::kTrue;
      io_.out << "CHECK " << name << " " << verdict(verdict_name(w.verdict), ok);
      if (w.verdict == Verdict::kFalse && w.blocked) {
        io_.out << " " << to_string(w.path) << " blocked " << w.blocked->str();
      }
      io_.out << "\n";
      return ok;
    }
    FairnessReport r = prop == "fair" ? check_fair(s, s0, s1, a, flags_.depth)
                                      : check_strong_fair(s, s0, s1, a, flags_.depth);
    io_.out << "CHECK " << name << " " << verdict(r.verdict(), r.holds());
    if (!r.holds()) io_.out << " " << r.witness();
    io_.out << "\n";
    return r.holds();
  }

  void write(const std::string& text) {
    if (flags_.output.empty() || flags_.output == "-") {
      io_.out << text;
      return;
    }
    std::ofstream f(flags_.output, std::ios::binary);
    if (!f) throw Error(ErrorCategory::kIo, "cannot write " + flags_.output);
    f << text;
  }

  static std::vector<std::string> split(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  const Streams& io_;
  const Flags& flags_;
  Loader loader_;
};

int fail(const Streams& io, std::string_view category, const std::string& message, int code) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  io.err << "error:" << category << ":" << line << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, const Streams& io) {
  Flags flags;
  CLI::App app{"Asserted protocol composition toolkit", "protoweave"};
  app.require_subcommand(1);

  auto env_opt = [&](CLI::App* cmd) {
    cmd->add_option("--env", flags.env, "Initial assertion environment, comma separated");
  };
  auto cap_opt = [&](CLI::App* cmd) {
    cmd->add_option("--cap", flags.cap, "LTS node cap")->check(CLI::PositiveNumber);
  };
  auto mode_opt = [&](CLI::App* cmd) {
    cmd->add_option("--mode", flags.mode, "strong, weak, corr or all");
    cmd->add_option("--budget", flags.budget, "Search node budget")->check(CLI::PositiveNumber);
    cmd->add_flag("--allow-empty", flags.allow_empty, "Exit 0 on an empty result set");
  };

  auto* check = app.add_subcommand("check", "Check well-assertedness against --env");
  env_opt(check);
  check->add_option("protocol", flags.refs, "FILE:NAME")->required()->expected(1);

  auto* trace = app.add_subcommand("trace", "Print the reachable transitions");
  env_opt(trace);
  cap_opt(trace);
  trace->add_option("protocols", flags.refs, "FILE:NAME [FILE:NAME]")->required()->expected(1, 2);

  auto* step = app.add_subcommand("step", "Print the immediate transitions");
  env_opt(step);
  step->add_option("protocols", flags.refs, "FILE:NAME [FILE:NAME]")->required()->expected(1, 2);

  auto* comp = app.add_subcommand("compose", "Compute all interleaving compositions");
  env_opt(comp);
  mode_opt(comp);
  comp->add_flag("--raw-counts", flags.raw_counts, "List structurally distinct results");
  comp->add_option("protocols", flags.refs, "FILE:NAME FILE:NAME")->required()->expected(2);

  auto* ver = app.add_subcommand("verify", "Check progress, simulation and fairness");
  env_opt(ver);
  cap_opt(ver);
  mode_opt(ver);
  ver->add_option("--depth", flags.depth, "Fairness depth")->check(CLI::PositiveNumber);
  ver->add_option("--props", flags.props, "Comma separated subset of "
                                          "progress,simulation,fair,strong-fair");
  auto* from = ver->add_flag("--from-compose", flags.from_compose, "Verify every composition");
  auto* composed =
      ver->add_option("--composed", flags.composed, "FILE:NAME of the composition to verify");
  from->excludes(composed);
  ver->add_option("protocols", flags.refs, "FILE:NAME FILE:NAME")->required()->expected(2);

  auto* gen = app.add_subcommand("gen", "Emit a state machine artifact");
  gen->add_option("--format", flags.format, "dot, fsm or stub");
  gen->add_option("-o,--output", flags.output, "Output path");
  gen->add_option("protocol", flags.refs, "FILE:NAME")->required()->expected(1);

  auto* ext = app.add_subcommand("extract", "Rebuild a protocol from .fsm.json or .stub");
  ext->add_option("-o,--output", flags.output, "Output path");
  ext->add_option("file", flags.refs, "FILE")->required()->expected(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::ParseError& e) {
    return fail(io, category_name(ErrorCategory::kUsage), e.what(), kUsage);
  }
  if (ver->parsed() && !flags.from_compose && flags.composed.empty()) {
    return fail(io, category_name(ErrorCategory::kUsage),
                "verify needs --composed FILE:NAME or --from-compose", kUsage);
  }

  Runner runner(io, flags);
  try {
    if (check->parsed()) return runner.check();
    if (trace->parsed()) return runner.trace();
    if (step->parsed()) return runner.step();
    if (comp->parsed()) return runner.compose_cmd();
    if (ver->parsed()) return runner.verify();
    if (gen->parsed()) return runner.gen();
    return runner.extract_cmd();
  } catch (const Error& e) {
    int code = e.category() == ErrorCategory::kUsage      ? kUsage
               : e.category() == ErrorCategory::kInternal ? kInternal
                                                          : kInput;
    return fail(io, category_name(e.category()), e.what(), code);
  } catch (const std::exception& e) {
    return fail(io, category_name(ErrorCategory::kInternal), e.what(), kInternal);
  }
}

}  // namespace protoweave::cli
