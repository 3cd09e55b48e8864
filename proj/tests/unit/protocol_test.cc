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

#include <algorithm>
#include <functional>

#include "protoweave/error.hh"
#include "protoweave/protocol.hh"
#include "protoweave/syntax.hh"
#include "support/corpus.hh"

namespace protoweave {
namespace {

Protocol P(const std::string& text) { return parse_protocol(text); }

bool has_violation(const Protocol& s, ViolationKind kind) {
  auto v = validate(s);
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

ErrorCategory category_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.category();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCategory::kInternal;
}

TEST(FreeVars, ClosedAndOpenTerms) {
  EXPECT_TRUE(free_vars(Protocol::end()).empty());
  EXPECT_TRUE(free_vars(P("rec t.!p.t")).empty());
  Protocol open = Protocol::prefix(Action::send("p"), Protocol::var("t"));
  EXPECT_EQ(free_vars(open), std::vector<std::string>{"t"});
  EXPECT_FALSE(open.closed());
}

TEST(Substitute, ReplacesFreeOccurrencesOnly) {
  Protocol open = Protocol::prefix(Action::send("p"), Protocol::var("t"));
  EXPECT_EQ(substitute(open, "t", Protocol::end()), P("!p.end"));
  Protocol loop = P("rec t.!p.t");
  EXPECT_EQ(substitute(loop, "t", Protocol::end()), loop);

  Protocol q = Protocol::prefix(Action::send("q"), Protocol::var("t2"));
  Protocol r = P("rec t2.!p.t2");
  EXPECT_EQ(to_string(substitute(q, "t2", r)), "!q.rec t2.!p.t2");
}

TEST(Substitute, RejectsCapture) {
  // rec u.!p.t with u for t would bind the inserted u.
  Protocol s = Protocol::rec("u", Protocol::prefix(Action::send("p"),
                                                   Protocol::choice(ChoiceOp::kPlain,
                                                                    {{"a", Protocol::var("u")},
                                                                     {"b", Protocol::var("t")}})));
  EXPECT_EQ(category_of([&] { substitute(s, "t", Protocol::var("u")); }), ErrorCategory::kCapture);
}

TEST(Substitute, FreeVariableLaw) {
  Protocol s = Protocol::prefix(Action::send("p"),
                                Protocol::choice(ChoiceOp::kSelect, {{"a", Protocol::var("t")},
                                                                     {"b", Protocol::var("v")}}));
  Protocol r = Protocol::prefix(Action::receive("q"), Protocol::var("w"));
  EXPECT_EQ(free_vars(substitute(s, "t", r)), (std::vector<std::string>{"v", "w"}));
  EXPECT_EQ(free_vars(substitute(s, "zz", r)), (std::vector<std::string>{"t", "v"}));
}

TEST(Unfold, OneStep) {
  EXPECT_EQ(to_string(unfold(P("rec t.!p.t"))), "!p.rec t.!p.t");
  EXPECT_EQ(category_of([] { unfold(P("!p.end")); }), ErrorCategory::kNotRecursion);
}

TEST(Top, OutermostBinder) {
  EXPECT_EQ(top(P("rec t.!p.t")), std::optional<std::string>("t"));
  EXPECT_EQ(top(Protocol::end()), std::nullopt);
  EXPECT_EQ(top(P("!p.rec t.!q.t")), std::nullopt);
}

TEST(Alpha, CanonicalNames) {
  EXPECT_EQ(to_string(alpha_canonicalize(P("rec x.!p.x"))), "rec r0.!p.r0");
  Protocol c = alpha_canonicalize(P("rec r0.!p.r0"));
  EXPECT_EQ(alpha_canonicalize(c), c);
  EXPECT_TRUE(alpha_eq(P("rec t1.!p2.!p1.t1"), P("rec t2.!p2.!p1.t2")));
  EXPECT_TRUE(alpha_eq(Protocol::end(), Protocol::end()));
  EXPECT_FALSE(alpha_eq(P("!p.end"), P("?p.end")));
  EXPECT_TRUE(alpha_eq(P("rec a.!p.a"), P("rec b.!p.b")));
}

TEST(Alpha, NumberingIgnoresBranchOrder) {
  Protocol a = P("sel{x: rec u.!p.u, y: rec v.?q.v}");
  Protocol b = P("sel{y: rec m.?q.m, x: rec n.!p.n}");
  EXPECT_EQ(alpha_canonicalize(a), alpha_canonicalize(b));
  EXPECT_TRUE(alpha_eq(a, b));
}

TEST(Alpha, CanonicalizeIsIdempotentOnCorpus) {
  for (const auto& e : testing::corpus_all()) {
    Protocol c = alpha_canonicalize(e.protocol);
    EXPECT_EQ(to_string(alpha_canonicalize(c)), to_string(c)) << e.ref;
    EXPECT_TRUE(alpha_eq(c, e.protocol)) << e.ref;
  }
}

TEST(Equality, BranchOrderInsensitivePrintingOrderPreserved) {
  Protocol a = P("bra{ok: end, ko: !x.end}");
  Protocol b = P("bra{ko: !x.end, ok: end}");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(to_string(a), "bra{ok: end, ko: !x.end}");
  EXPECT_EQ(to_string(b), "bra{ko: !x.end, ok: end}");
  EXPECT_NE(P("sel{ok: end}"), P("bra{ok: end}"));
}

TEST(Dual, SwapsDirections) {
  EXPECT_EQ(dual(P("!pin.end")), P("?pin.end"));
  EXPECT_EQ(dual(P("sel{a: ?x.end, b: assert(n).end}")), P("bra{a: !x.end, b: assert(n).end}"));
  EXPECT_EQ(category_of([] { dual(P("p.end")); }), ErrorCategory::kUndualizable);
  EXPECT_EQ(category_of([] { dual(P("+{a: end}")); }), ErrorCategory::kUndualizable);
}

TEST(Dual, Involution) {
  for (const auto& e : testing::corpus_all()) {
    Protocol s = e.protocol;
    try {
      EXPECT_EQ(dual(dual(s)), s) << e.ref;
    } catch (const Error& err) {
      EXPECT_EQ(err.category(), ErrorCategory::kUndualizable) << e.ref;
    }
  }
}

TEST(Dual, BankingClient) {
  Protocol s_ba = testing::corpus("bank:s_ba");
  EXPECT_EQ(dual(erase_assertions(s_ba)), testing::corpus("bank:s_ba_dual"));
}

TEST(Validate, Violations) {
  Protocol unguarded = Protocol::rec("t", Protocol::var("t"));
  EXPECT_TRUE(has_violation(unguarded, ViolationKind::kUnguardedVar));

  Protocol nested = Protocol::rec(
      "t", Protocol::rec("u", Protocol::prefix(Action::send("p"),
                                               Protocol::choice(ChoiceOp::kPlain,
                                                                {{"l1", Protocol::var("t")},
                                                                 {"l2", Protocol::var("u")}}))));
  EXPECT_TRUE(has_violation(nested, ViolationKind::kNestedRecursion));

  Protocol unused = Protocol::rec("t", P("?pay.end"));
  EXPECT_TRUE(has_violation(unused, ViolationKind::kUnusedBinder));

  Protocol dup = Protocol::choice(ChoiceOp::kSelect, {{"a", Protocol::end()}, {"a", Protocol::end()}});
  EXPECT_TRUE(has_violation(dup, ViolationKind::kDuplicateLabel));

  EXPECT_TRUE(has_violation(Protocol::choice(ChoiceOp::kSelect, {}), ViolationKind::kEmptyChoice));

  Protocol twice = Protocol::prefix(
      Action::send("p"),
      Protocol::choice(ChoiceOp::kSelect, {{"a", P("rec t.!q.t")}, {"b", P("rec t.!q.t")}}));
  EXPECT_TRUE(has_violation(twice, ViolationKind::kDuplicateBinder));

  EXPECT_TRUE(has_violation(Protocol::prefix(Action::send("1x"), Protocol::end()),
                            ViolationKind::kBadIdentifier));
}

TEST(Validate, CorpusIsValid) {
  for (const auto& e : testing::corpus_all()) {
    EXPECT_TRUE(validate(e.protocol).empty()) << e.ref;
    EXPECT_TRUE(e.protocol.closed()) << e.ref;
  }
}

TEST(Freshen, FirstOccurrenceKeepsName) {
  Protocol twice = Protocol::prefix(
      Action::send("p"),
      Protocol::choice(ChoiceOp::kSelect, {{"a", P("rec t.!q.t")}, {"b", P("rec t.!q.t")}}));
  Protocol f = freshen(twice);
  EXPECT_TRUE(validate(f).empty());
  EXPECT_EQ(bound_vars(f).front(), "t");
  EXPECT_EQ(bound_vars(f).size(), 2u);
}

TEST(Metrics, SizeCountsBinders) {
  EXPECT_EQ(Protocol::end().size(), 1u);
  EXPECT_EQ(P("rec t.!p.t").size(), 3u);
  EXPECT_EQ(assertion_names(P("assert(b).require(a).consume(b).end")),
            (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(has_assertions(P("require(a).end")));
  EXPECT_FALSE(has_assertions(P("!a.end")));
}

}  // namespace
}  // namespace protoweave
