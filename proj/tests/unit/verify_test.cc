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

#include <gtest/gtest.h>

#include "protoweave/compose.hh"
#include "protoweave/syntax.hh"
#include "protoweave/verify.hh"
#include "support/corpus.hh"

namespace protoweave {
namespace {

Protocol P(const std::string& text) { return parse_protocol(text); }

TEST(Simulation, ParallelEndMirrorsEveryProtocol) {
  for (const auto& e : testing::corpus_all()) {
    SimulationWitness w = simulates(Config{{}, e.protocol},
                                    EnsembleConfig(Env{}, e.protocol, Protocol::end()));
    EXPECT_EQ(w.verdict, Verdict::kTrue) << e.ref;
    EXPECT_FALSE(w.relation.empty());
  }
}

TEST(Simulation, BlockedLabel) {
  SimulationWitness w =
      simulates(Config{{}, P("!p.end")}, EnsembleConfig(Env{}, Protocol::end(), Protocol::end()));
  EXPECT_EQ(w.verdict, Verdict::kFalse);
  ASSERT_TRUE(w.blocked);
  EXPECT_EQ(w.blocked->str(), "!p");
  EXPECT_TRUE(w.path.empty());

  SimulationWitness deep = simulates(Config{{}, P("!a.bra{x: !b.end, y: end}")},
                                     EnsembleConfig(Env{}, P("!a.end"), P("bra{y: end}")));
  EXPECT_EQ(deep.verdict, Verdict::kFalse);
  EXPECT_EQ(to_string(deep.path), "[!a]");
  ASSERT_TRUE(deep.blocked);
  EXPECT_EQ(deep.blocked->str(), "bra{x}");
}

TEST(Simulation, ReflexiveAndOrderIndependent) {
  Protocol s = testing::corpus("bank:s_ba");
  EXPECT_EQ(simulates(EnsembleConfig(Env{}, s), EnsembleConfig(Env{}, s)).verdict, Verdict::kTrue);
  EXPECT_EQ(simulates(Config{{}, P("!a.?b.end")}, EnsembleConfig(Env{}, P("?b.end"), P("!a.end")))
                .verdict,
            Verdict::kTrue);
  EXPECT_EQ(simulates(Config{{}, P("?b.!a.end")}, EnsembleConfig(Env{}, P("?b.end"), P("!a.end")))
                .verdict,
            Verdict::kTrue);
}

TEST(Simulation, Transitive) {
  EnsembleConfig mid(Env{}, P("+{k: !a.end, l: ?b.end}"));
  EnsembleConfig top(Env{}, P("+{k: !a.end, l: ?b.end, m: end}"));
  ASSERT_EQ(simulates(Config{{}, P("+{k: !a.end}")}, mid).verdict, Verdict::kTrue);
  ASSERT_EQ(simulates(mid, top).verdict, Verdict::kTrue);
  EXPECT_EQ(simulates(Config{{}, P("+{k: !a.end}")}, top).verdict, Verdict::kTrue);
  EXPECT_EQ(simulates(top, mid).verdict, Verdict::kFalse);
}

TEST(Simulation, AssertionsMatchAsLabels) {
  EnsembleConfig rhs(Env{}, P("assert(n).end"), P("require(n).!x.end"));
  EXPECT_EQ(simulates(Config{{}, P("assert(n).require(n).!x.end")}, rhs).verdict, Verdict::kTrue);
  EXPECT_EQ(simulates(Config{{}, P("assert(n).!x.end")}, rhs).verdict, Verdict::kFalse);
}

TEST(Simulation, CapGivesInconclusive) {
  Protocol s = P("!a.!b.!c.!d.!e.end");
  EXPECT_EQ(simulates(Config{{}, s}, EnsembleConfig(Env{}, s, Protocol::end()), 2).verdict,
            Verdict::kInconclusive);
}

TEST(Fairness, TrivialTriple) {
  FairnessReport r = check_fair(Protocol::end(), Protocol::end(), Protocol::end(), {});
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.verdict(), "holds");
  EXPECT_TRUE(r.witness().empty());
  EXPECT_TRUE(check_strong_fair(Protocol::end(), Protocol::end(), Protocol::end(), {}).holds());
}

TEST(Fairness, StarvedComponentFails) {
  Protocol loop = P("rec t.!p1.t");
  FairnessReport r = check_fair(loop, loop, P("!p2.end"), {});
  EXPECT_FALSE(r.holds());
  EXPECT_EQ(r.verdict(), "fails");
  EXPECT_EQ(r.component, 1);
  ASSERT_TRUE(r.label);
  EXPECT_EQ(r.label->str(), "!p2");
  EXPECT_FALSE(check_strong_fair(loop, loop, P("!p2.end"), {}).holds());
}

TEST(Fairness, InterleavedLoopsAreFair) {
  Protocol s = P("rec t.p1.p2.t");
  EXPECT_TRUE(check_fair(s, P("rec t.p1.t"), P("rec u.p2.u"), {}).holds());
  EXPECT_TRUE(check_strong_fair(s, P("rec t.p1.t"), P("rec u.p2.u"), {}).holds());
}

TEST(Fairness, FairButNotStronglyFair) {
  Protocol s = testing::corpus("branching:grant_use");
  Protocol s0 = testing::corpus("branching:grant");
  Protocol s1 = testing::corpus("branching:use");
  FairnessReport fair = check_fair(s, s0, s1, {});
  EXPECT_TRUE(fair.holds()) << fair.witness();

  FairnessReport strong = check_strong_fair(s, s0, s1, {});
  ASSERT_FALSE(strong.holds());
  EXPECT_EQ(strong.component, 1);
  ASSERT_TRUE(strong.label);
  EXPECT_EQ(strong.label->str(), "require(n)");
  ASSERT_FALSE(strong.trace.empty());
  EXPECT_EQ(strong.trace.front().str(), "sel{ko}");
  EXPECT_NE(strong.witness().find("label=require(n) trace=[sel{ko}]"), std::string::npos);
}

TEST(Fairness, StrongImpliesFairOnStrongResults) {
  for (const auto& pair : testing::corpus_pairs()) {
    Protocol s0 = testing::corpus(pair.left);
    Protocol s1 = freshen_against(testing::corpus(pair.right), bound_vars(s0));
    CompositionResult r = compose(s0, s1, {}, Mode::kStrong);
    for (const Protocol& s : r.results) {
      FairnessReport strong = check_strong_fair(s, s0, s1, {});
      FairnessReport fair = check_fair(s, s0, s1, {});
      EXPECT_TRUE(strong.holds()) << pair.left << " " << to_string(s) << " " << strong.witness();
      if (strong.holds()) {
        EXPECT_TRUE(fair.holds()) << to_string(s);
      }
    }
  }
}

TEST(ComponentSteps, IgnoreEnvironment) {
  auto steps = component_steps(P("require(n).!a.end"));
  ASSERT_EQ(steps.size(), 1U);
  EXPECT_EQ(steps[0].first.str(), "require(n)");
  EXPECT_EQ(steps[0].second, P("!a.end"));
  EXPECT_TRUE(component_steps(Protocol::end()).empty());
  EXPECT_EQ(component_steps(P("sel{a: end, b: end}")).size(), 2U);
}

}  // namespace
}  // namespace protoweave
