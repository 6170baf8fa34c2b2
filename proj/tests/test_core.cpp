#include <gtest/gtest.h>

#include <bit>
#include <set>

#include "w3sat/core.hpp"
#include "w3sat/rng.hpp"

namespace w3sat {
namespace {

Clause C(std::initializer_list<int> lits) { return make_clause(lits); }

TEST(Literal, EncodesVariableAndPolarity) {
  const Literal p = pos(3);
  const Literal q = neg(3);
  EXPECT_EQ(p.var(), 3u);
  EXPECT_FALSE(p.negated());
  EXPECT_TRUE(q.negated());
  EXPECT_EQ(~p, q);
  EXPECT_EQ(p.index(), 6u);
  EXPECT_EQ(q.index(), 7u);
  EXPECT_LT(p, q);
  EXPECT_LT(q, pos(4));
  EXPECT_EQ(Literal::from_int(-5), neg(5));
}

TEST(Literal, ZeroIsRejected) {
  try {
    Literal::from_int(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::VarOutOfRange);
  }
}

TEST(Canonicalize, SortsAndDeduplicates) {
  const auto c = C({3, -1, 3, 2});
  EXPECT_EQ(c.to_string(), "[-1, 2, 3]");
  EXPECT_EQ(c.width(), 3u);
  EXPECT_EQ(c.max_var(), 3u);
  EXPECT_TRUE(c.contains(neg(1)));
  EXPECT_FALSE(c.contains(pos(1)));
  EXPECT_TRUE(c.mentions(1));
}

TEST(Canonicalize, DetectsTautology) {
  const Literal lits[] = {pos(1), neg(1), pos(2)};
  EXPECT_TRUE(std::holds_alternative<Tautology>(canonicalize(lits)));
}

TEST(Canonicalize, EmptyInputThrows) {
  try {
    canonicalize(std::span<const Literal>());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyClauseInput);
  }
}

TEST(Canonicalize, FromCanonicalRejectsUnsortedInput) {
  const Literal lits[] = {pos(2), pos(1)};
  EXPECT_THROW(Clause::from_canonical(lits), Error);
}

TEST(Clause, OrderIsWidthThenLexicographic) {
  EXPECT_LT(C({5}), C({1, 2}));
  EXPECT_LT(C({1, 2}), C({1, -2}));
  EXPECT_LT(C({1, -2}), C({-1, 2}));
}

TEST(Assignment, IndexPutsFirstVariableMostSignificant) {
  EXPECT_EQ(Assignment::from_index(3, 1).to_string(), "001");
  EXPECT_EQ(Assignment::from_index(3, 4).to_string(), "100");
  EXPECT_TRUE(Assignment::from_index(3, 4).value(1));
}

TEST(Blocking, ClauseBlocksWhenEveryLiteralIsFalse) {
  const auto c = C({1, -2});
  EXPECT_TRUE(blocks(c, Assignment::from_index(2, 0b01)));   // x1=0, x2=1
  EXPECT_FALSE(blocks(c, Assignment::from_index(2, 0b00)));  // x2=0 satisfies -2
  EXPECT_FALSE(blocks(c, Assignment::from_index(2, 0b11)));
}

TEST(Blocking, VariableBeyondAssignmentThrows) {
  try {
    blocks(C({4}), Assignment::from_index(3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::VarOutOfRange);
  }
}

TEST(Blocking, BlockedCountMatchesEnumeration) {
  // Every canonical clause of width <= 3 over n = 5.
  const Var n = 5;
  std::size_t checked = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > 3) continue;
    std::vector<Var> vars;
    for (Var v = 1; v <= n; ++v) {
      if (mask & (1u << (v - 1))) vars.push_back(v);
    }
    for (std::uint32_t signs = 0; signs < (1u << vars.size()); ++signs) {
      std::vector<Literal> lits;
      for (std::size_t i = 0; i < vars.size(); ++i) lits.push_back(Literal(vars[i], (signs >> i) & 1u));
      const Clause c = make_clause(std::span<const Literal>(lits));
      std::uint64_t blocked = 0;
      for (std::uint64_t a = 0; a < (1u << n); ++a) blocked += blocks(c, Assignment::from_index(n, a)) ? 1 : 0;
      EXPECT_EQ(blocked, blocked_count(c, n)) << c.to_string();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 10u + 40u + 80u);  // 2*C(5,1) + 4*C(5,2) + 8*C(5,3)
}

TEST(Blocking, BlockedCountRejectsWideClause) {
  try {
    blocked_count(C({1, 2, 3}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WidthExceedsN);
  }
}

TEST(Subsumption, SubsetRelation) {
  EXPECT_TRUE(subsumes(C({1}), C({1, 2})));
  EXPECT_TRUE(subsumes(C({1, 2}), C({1, 2})));
  EXPECT_FALSE(subsumes(C({1, 2}), C({1})));
  EXPECT_FALSE(subsumes(C({-1}), C({1, 2})));
}

TEST(Resolution, ProducesUnionWithoutPivot) {
  const auto r = resolve(C({1, 2}), C({-1, 3}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.clause, C({2, 3}));
  EXPECT_EQ(r.pivot, 1u);
}

TEST(Resolution, SharedLiteralsMerge) {
  const auto r = resolve(C({1, 2, 3}), C({-1, 2, 3}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.clause, C({2, 3}));
}

TEST(Resolution, DegenerateCases) {
  EXPECT_EQ(resolve(C({1, 2}), C({1, 3})).kind, Resolvent::Kind::NoPivot);
  EXPECT_EQ(resolve(C({1, 2}), C({1, 2})).kind, Resolvent::Kind::NoPivot);
  EXPECT_EQ(resolve(C({1, 2}), C({-1, -2})).kind, Resolvent::Kind::Tautology);
  EXPECT_EQ(resolve(C({1}), C({-1})).kind, Resolvent::Kind::Empty);
}

TEST(Resolution, WidthBounds) {
  EXPECT_EQ(resolvent_width_bounds(3, 3).lo, 2u);
  EXPECT_EQ(resolvent_width_bounds(3, 3).hi, 4u);
  EXPECT_EQ(resolvent_width_bounds(1, 2).lo, 1u);
  EXPECT_EQ(resolvent_width_bounds(1, 2).hi, 1u);
  EXPECT_THROW(resolvent_width_bounds(0, 2), Error);
}

TEST(Resolution, RandomResolventsRespectWidthBounds) {
  Rng rng(7);
  std::size_t resolved = 0;
  for (int t = 0; t < 5000; ++t) {
    auto random_clause = [&] {
      std::vector<Literal> lits;
      const auto width = 1 + uniform_below(rng, 4);
      for (std::uint64_t i = 0; i < width; ++i) lits.push_back(Literal(static_cast<Var>(1 + uniform_below(rng, 6)), coin(rng)));
      return canonicalize(lits);
    };
    auto a = random_clause();
    auto b = random_clause();
    if (!std::holds_alternative<Clause>(a) || !std::holds_alternative<Clause>(b)) continue;
    const auto& ca = std::get<Clause>(a);
    const auto& cb = std::get<Clause>(b);
    const auto r = resolve(ca, cb);
    if (!r.ok()) continue;
    const auto bounds = resolvent_width_bounds(ca.width(), cb.width());
    EXPECT_LE(r.clause.width(), bounds.hi);
    EXPECT_GE(r.clause.width(), bounds.lo);
    EXPECT_FALSE(r.clause.mentions(r.pivot));
    ++resolved;
  }
  EXPECT_GT(resolved, 100u);
}

TEST(Expansion, EnumeratesSupersetsUpToWidth) {
  const auto out = expansions(C({1}), 3, 3);
  // 2 choices of variable * 2 polarities, plus both variables * 4 polarities.
  ASSERT_EQ(out.size(), 8u);
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
  std::set<std::string> seen;
  for (const auto& e : out) {
    EXPECT_TRUE(subsumes(C({1}), e));
    EXPECT_GT(e.width(), 1u);
    seen.insert(e.to_string());
  }
  EXPECT_EQ(seen.size(), out.size());
}

TEST(Expansion, CountFormula) {
  // Sum over j of C(n-w, j) * 2^j for j = 1 .. max_width - w.
  EXPECT_EQ(expansions(C({1, 2}), 6, 3).size(), 8u);
  EXPECT_EQ(expansions(C({1}), 6, 3).size(), 10u + 40u);
  EXPECT_TRUE(expansions(C({1, 2, 3}), 6, 3).empty());
}

TEST(Expansion, PreconditionViolationsThrow) {
  EXPECT_THROW(expansions(C({1, 2, 3}), 3, 2), Error);
  EXPECT_THROW(expansions(C({1}), 2, 3), Error);
  EXPECT_THROW(expansions(C({4}), 3, 3), Error);
}

TEST(Instance, ValidateAndSatisfaction) {
  Instance inst{3, {C({1, 2}), C({-1, 3})}};
  EXPECT_NO_THROW(inst.validate());
  EXPECT_EQ(inst.max_width(), 2u);
  EXPECT_TRUE(inst.satisfied_by(Assignment::from_index(3, 0b011)));
  EXPECT_FALSE(inst.satisfied_by(Assignment::from_index(3, 0b000)));
  Instance bad{2, {C({3})}};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Ingest, DropsTautologiesAndChecksRange) {
  const auto in = ingest(3, {{1, -1, 2}, {2, 3}});
  EXPECT_EQ(in.tautologies_dropped, 1u);
  ASSERT_EQ(in.instance.clauses.size(), 1u);
  EXPECT_EQ(in.instance.clauses[0], C({2, 3}));
  EXPECT_THROW(ingest(2, {{3}}), Error);
}

}  // namespace
}  // namespace w3sat
