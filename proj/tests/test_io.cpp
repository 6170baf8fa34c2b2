#include <gtest/gtest.h>

#include "w3sat/harness.hpp"
#include "w3sat/io.hpp"

namespace w3sat {
namespace {

Clause C(std::initializer_list<int> lits) { return make_clause(lits); }

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::Internal;
}

TEST(Dimacs, ParsesUnitPair) {
  const auto p = parse_dimacs("p cnf 2 2\n1 0\n-1 0\n");
  EXPECT_EQ(p.instance.n_vars, 2u);
  ASSERT_EQ(p.instance.clauses.size(), 2u);
  EXPECT_EQ(p.instance.clauses[0], C({1}));
  EXPECT_EQ(p.instance.clauses[1], C({-1}));
}

TEST(Dimacs, DropsTautologies) {
  const auto p = parse_dimacs("p cnf 3 1\n1 -1 2 0\n");
  EXPECT_TRUE(p.instance.clauses.empty());
  EXPECT_EQ(p.tautologies_dropped, 1u);
  EXPECT_EQ(p.instance.n_vars, 3u);
}

TEST(Dimacs, VariableBeyondHeaderIsRejected) {
  EXPECT_EQ(error_code([] { parse_dimacs("p cnf 3 1\n1 2 3 4 0\n"); }), Errc::VarOutOfRange);
}

TEST(Dimacs, WideClauseIsRejectedWithIndex) {
  try {
    parse_dimacs("p cnf 4 2\n1 2 0\n1 2 3 4 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WidthTooLarge);
    EXPECT_NE(std::string(e.what()).find("clause 1"), std::string::npos);
  }
}

TEST(Dimacs, CommentsAndSplitClauses) {
  const auto p = parse_dimacs("c hello\nc\np cnf 3 2\n1 -2\n 3 0 -1\n0\n%\n0\n");
  ASSERT_EQ(p.instance.clauses.size(), 2u);
  EXPECT_EQ(p.instance.clauses[0], C({1, -2, 3}));
  EXPECT_EQ(p.instance.clauses[1], C({-1}));
}

TEST(Dimacs, DuplicateLiteralsCollapse) {
  const auto p = parse_dimacs("p cnf 2 1\n1 1 2 0\n");
  EXPECT_EQ(p.instance.clauses[0], C({1, 2}));
}

TEST(Dimacs, SyntaxErrors) {
  const char* bad[] = {
      "1 2 0\n",                     // no problem line
      "p cnf 2\n1 0\n",              // short problem line
      "p sat 2 1\n1 0\n",            // wrong format word
      "p cnf 2 1\n1 x 0\n",          // bad token
      "p cnf 2 1\n1 2\n",            // unterminated clause
      "p cnf 2 2\n1 0\n",            // too few clauses
      "p cnf 2 1\n0\n",              // empty clause
      "p cnf 2 1\np cnf 2 1\n1 0\n"  // duplicate problem line
  };
  for (const char* text : bad) EXPECT_EQ(error_code([&] { parse_dimacs(text); }), Errc::SyntaxError) << text;
}

TEST(Dimacs, SyntaxErrorNamesLine) {
  try {
    parse_dimacs("p cnf 2 1\n\n1 y 0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Lists, ParsesBracketedNotation) {
  const auto p = parse_paper_lists("[[-1,2,3],[1,4,5]]");
  EXPECT_EQ(p.instance.n_vars, 5u);
  ASSERT_EQ(p.instance.clauses.size(), 2u);
  EXPECT_EQ(p.instance.clauses[0], C({-1, 2, 3}));
  EXPECT_EQ(p.instance.clauses[1], C({1, 4, 5}));
}

TEST(Lists, EmptyInstance) {
  const auto p = parse_paper_lists("[]");
  EXPECT_EQ(p.instance.n_vars, 0u);
  EXPECT_TRUE(p.instance.clauses.empty());
  EXPECT_EQ(parse_paper_lists(" [ ] ", 6).instance.n_vars, 6u);
}

TEST(Lists, DeduplicatesLiterals) {
  const auto p = parse_paper_lists("[[1,1,2]]");
  ASSERT_EQ(p.instance.clauses.size(), 1u);
  EXPECT_EQ(p.instance.clauses[0], C({1, 2}));
}

TEST(Lists, VarsFlagWidensUniverse) {
  EXPECT_EQ(parse_paper_lists("[[1, -2]]", 9).instance.n_vars, 9u);
  EXPECT_EQ(error_code([] { parse_paper_lists("[[1, -4]]", 3); }), Errc::VarOutOfRange);
}

TEST(Lists, OuterBracketsAreOptional) {
  EXPECT_EQ(parse_paper_lists("[1, 2], [-1]").instance.clauses.size(), 2u);
  EXPECT_EQ(parse_paper_lists("  [ [ 1 ] , [ -2 , 3 ] ]\n").instance.clauses.size(), 2u);
}

TEST(Lists, Errors) {
  const char* syntax[] = {"[[1, 2]", "[[1,, 2]]", "[[a]]", "[[]]", "[[0]]", "[[1]] x", "[[1] [2]]"};
  for (const char* text : syntax) EXPECT_EQ(error_code([&] { parse_paper_lists(text); }), Errc::SyntaxError) << text;
  EXPECT_EQ(error_code([] { parse_paper_lists("[[1, 2, 3, 4]]"); }), Errc::WidthTooLarge);
}

TEST(Format, Detection) {
  EXPECT_EQ(detect_format("  \n[[1]]"), InputFormat::PaperLists);
  EXPECT_EQ(detect_format("c x\np cnf 1 0\n"), InputFormat::Dimacs);
}

TEST(RoundTrip, DimacsIsExact) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto inst = gen_random({3 + static_cast<Var>(seed % 12), 5 + seed % 40, seed});
    const std::string text = emit_dimacs(inst);
    const auto back = parse_dimacs(text).instance;
    EXPECT_EQ(back.n_vars, inst.n_vars);
    EXPECT_EQ(back.clauses, inst.clauses);
    EXPECT_EQ(emit_dimacs(back), text);
  }
}

TEST(RoundTrip, ListsAreExact) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto generated = gen_random({3 + static_cast<Var>(seed % 12), 5 + seed % 40, seed});
    // Parse once so n is the inferred value, then emit and parse again.
    const auto inst = parse_paper_lists(emit_paper_lists(generated)).instance;
    const std::string text = emit_paper_lists(inst);
    const auto back = parse_paper_lists(text).instance;
    EXPECT_EQ(back.n_vars, inst.n_vars);
    EXPECT_EQ(back.clauses, inst.clauses);
    EXPECT_EQ(emit_paper_lists(back), text);
  }
}

TEST(RoundTrip, EmitFormats) {
  const Instance inst{4, {C({-1, 2, 3}), C({4})}};
  EXPECT_EQ(emit_dimacs(inst), "p cnf 4 2\n-1 2 3 0\n4 0\n");
  EXPECT_EQ(emit_paper_lists(inst), "[[-1, 2, 3], [4]]\n");
  EXPECT_EQ(emit_paper_lists(Instance{}), "[]\n");
}

TEST(Trace, EmitFormat) {
  const std::vector<DerivationStep> steps{{0, Rule::Given, {}, C({1, 2})},
                                          {1, Rule::Given, {}, C({-1, 2})},
                                          {2, Rule::Resolve, {0, 1}, C({2})},
                                          {3, Rule::Expand, {2}, C({2, -3})}};
  EXPECT_EQ(emit_trace(steps, 2),
            "# w3sat trace v1\n# refuted 2\n0 given - 1 2 0\n1 given - -1 2 0\n2 resolve 0,1 2 0\n3 expand 2 2 -3 0\n");
}

TEST(Trace, RoundTripsEngineOutput) {
  std::size_t traces = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto inst = gen_random({8, 40, seed});
    const auto v = saturate(inst);
    if (!v.refuted()) continue;
    const std::string text = emit_trace(v);
    const auto parsed = parse_trace(text);
    EXPECT_EQ(parsed.refuted_var, v.var);
    EXPECT_EQ(parsed.steps, v.trace);
    EXPECT_EQ(emit_trace(parsed.steps, parsed.refuted_var), text);
    EXPECT_TRUE(check_trace(inst, *parsed.refuted_var, parsed.steps).ok);
    ++traces;
  }
  EXPECT_GT(traces, 0u);
}

TEST(Trace, ParseErrors) {
  const char* bad[] = {"0 given - 1 2\n", "0 frob - 1 0\n", "x given - 1 0\n", "0 resolve 1,a 1 0\n", "0 given - 1 -1 0\n"};
  for (const char* text : bad) EXPECT_EQ(error_code([&] { parse_trace(text); }), Errc::SyntaxError) << text;
  EXPECT_THROW(emit_trace(Verdict{}), Error);
}

TEST(Digest, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace w3sat
