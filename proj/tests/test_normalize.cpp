#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muipc/normalize.hpp"
#include "muipc/prover.hpp"
#include "support/gen.hpp"

using namespace muipc;
using namespace muipc::testgen;

namespace {
Formula F(const char* text) { return parse(text); }
}  // namespace

TEST_CASE("split renames the weakly negative occurrences") {
  SplitResult r = split(F("(x -> c) -> (a \\/ x)"), "x");
  CHECK(r.has_weakly_negative);
  CHECK(r.wneg_var == "y");
  CHECK(r.renamed == F("(y -> c) -> (a \\/ x)"));

  SplitResult none = split(F("b \\/ x"), "x");
  CHECK_FALSE(none.has_weakly_negative);
  CHECK(none.renamed == F("b \\/ x"));

  SplitResult all = split(F("(x -> b) -> a"), "x");
  CHECK(all.has_weakly_negative);
  CHECK(all.renamed == F("(y -> b) -> a"));
  CHECK_FALSE(all.renamed.has_free("x"));

  CHECK_THROWS_AS(split(F("x -> a"), "x"), PositivityError);
}

TEST_CASE("split avoids capturing an existing y") {
  SplitResult r = split(F("(x -> y) -> (y \\/ x)"), "x");
  CHECK(r.wneg_var == "y1");
}

TEST_CASE("property: substituting x back for y undoes split") {
  Rng rng(41);
  std::vector<std::string> atoms = default_atoms(3);
  for (int i = 0; i < 100; ++i) {
    Formula f = random_positive(rng, atoms, "x", 3);
    SplitResult r = split(f, "x");
    CHECK(strongly_positive_in(r.renamed, r.spos_var));
    CHECK(weakly_negative_in(r.renamed, r.wneg_var));
    CHECK(substitute(r.renamed, r.wneg_var, Formula::var("x")) == f);
  }
}

TEST_CASE("normal form tables") {
  NormalForm nf = to_normal_form(F("g /\\ x"), "x");
  CHECK(nf.x_free_part == F("g"));
  REQUIRE(nf.disjuncts.size() == 1);
  CHECK(nf.disjuncts[0] == F("x"));

  NormalForm imp = to_normal_form(F("a -> (b \\/ x)"), "x");
  CHECK(imp.x_free_part == Formula::top());  // [a]T canonicalizes away
  REQUIRE(imp.disjuncts.size() == 1);
  CHECK(imp.disjuncts[0] == F("a -> (b \\/ x)"));

  NormalForm both = to_normal_form(F("(a \\/ x) /\\ (b \\/ x)"), "x");
  CHECK(both.x_free_part == Formula::top());
  REQUIRE(both.disjuncts.size() == 2);
  CHECK(both.disjuncts[0] == F("a \\/ x"));
  CHECK(both.disjuncts[1] == F("b \\/ x"));

  CHECK_THROWS_AS(to_normal_form(F("a"), "x"), DomainError);
  CHECK_THROWS_AS(to_normal_form(F("(x -> a) -> b"), "x"), DomainError);
}

TEST_CASE("head and side subformulas") {
  DisjunctiveFormula d(F("(a1 -> (b1 \\/ x)) \\/ (a2 -> (b2 \\/ x))"), "x");
  HeadSide hs = head_side(d);
  REQUIRE(hs.head.size() == 2);
  REQUIRE(hs.side.size() == 2);
  CHECK(hs.head[0] == F("a1"));
  CHECK(hs.head[1] == F("a2"));
  CHECK(hs.side[0] == F("b1"));
  CHECK(hs.side[1] == F("b2"));

  DisjunctiveFormula just_x(F("x"), "x");
  HeadSide hx = head_side(just_x);
  CHECK(hx.head.empty());
  CHECK(hx.side.empty());

  DisjunctiveFormula side_only(F("b \\/ x"), "x");
  HeadSide hb = head_side(side_only);
  CHECK(hb.head.empty());
  REQUIRE(hb.side.size() == 1);
  CHECK(hb.side[0] == F("b"));
}

TEST_CASE("is_disjunctive") {
  CHECK(is_disjunctive(F("x"), "x"));
  CHECK_FALSE(is_disjunctive(F("g /\\ x"), "x"));
  CHECK(is_disjunctive(F("a -> (b \\/ x)"), "x"));
  CHECK_FALSE(is_disjunctive(F("(x -> a) -> b"), "x"));
  CHECK_FALSE(is_disjunctive(F("b"), "x"));
  CHECK(is_disjunctive(F("b \\/ x \\/ (a -> x)"), "x"));
  CHECK_THROWS_AS(DisjunctiveFormula(F("g /\\ x"), "x"), DomainError);
}

TEST_CASE("property: the normal form is provably equivalent to the input") {
  Rng rng(20260810);
  std::vector<std::string> atoms = default_atoms(3);
  Prover p;
  for (int i = 0; i < 120; ++i) {
    Formula f = random_strongly_positive(rng, atoms, "x", 4);
    if (!f.has_free("x") || f.size() > 15) continue;
    CAPTURE(f.to_string());
    NormalForm nf = to_normal_form(f, "x");
    std::vector<Formula> parts{nf.x_free_part};
    for (const Formula& d : nf.disjuncts) {
      CHECK(is_disjunctive(d, "x"));
      parts.push_back(d);
    }
    CHECK(p.equiv(f, Formula::conj(parts)));
  }
}

TEST_CASE("property: weak negativity of other variables survives normalization") {
  Rng rng(77);
  std::vector<std::string> atoms = default_atoms(2);
  Prover p;
  for (int i = 0; i < 80; ++i) {
    // plant a weakly negative occurrence of w inside a head or side position
    Formula seed = random_strongly_positive(rng, atoms, "x", 3);
    Formula f = substitute(seed, "a", F("(w -> c) -> a"));
    if (!f.has_free("x") || !f.has_free("w")) continue;
    if (!weakly_negative_in(f, "w")) continue;
    NormalForm nf = to_normal_form(f, "x");
    CHECK(weakly_negative_in(nf.x_free_part, "w"));
    for (const Formula& d : nf.disjuncts) CHECK(weakly_negative_in(d, "w"));
  }
}
