#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muipc/formula.hpp"
#include "muipc/heyting.hpp"
#include "support/gen.hpp"

using namespace muipc;
using namespace muipc::testgen;

namespace {
Formula V(const char* n) { return Formula::var(n); }
}  // namespace

TEST_CASE("parse: grammar and canonical form") {
  CHECK(parse("mu x. (a -> (b \\/ x))") ==
        Formula::mu("x", Formula::imp(V("a"), Formula::disj({V("b"), V("x")}))));
  CHECK_THROWS_AS(parse("mu x. (x -> a)"), ParseError);
  CHECK(parse("(a /\\ a) \\/ b") == Formula::disj({V("a"), V("b")}));

  CHECK(parse("T") == Formula::top());
  CHECK(parse("a -> b -> c") ==
        Formula::imp(V("a"), Formula::imp(V("b"), V("c"))));
  CHECK(parse("a /\\ b \\/ c") == Formula::disj({Formula::conj({V("a"), V("b")}), V("c")}));
  CHECK(parse("a \\/ mu x. x \\/ b") ==
        Formula::disj({V("a"), Formula::mu("x", Formula::disj({V("x"), V("b")}))}));

  CHECK_THROWS_AS(parse("a -> "), ParseError);
  CHECK_THROWS_AS(parse("(a"), ParseError);
  CHECK_THROWS_AS(parse("a @ b"), ParseError);
  try {
    parse("a \\/ @");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("parse: bound variables renamed apart") {
  Formula f = parse("(mu x. x) /\\ (nu x. x /\\ a) /\\ x");
  // one free x, two binders; every binder gets a name distinct from "x"
  std::set<std::string> binders;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Kind::Mu) || g.is(Kind::Nu)) {
      binders.insert(g.name());
      walk(g.body());
    }
    for (const Formula& c : g.children()) walk(c);
    if (g.is(Kind::Imp)) {
      walk(g.antecedent());
      walk(g.consequent());
    }
  };
  walk(f);
  CHECK(binders.size() == 2);
  CHECK(binders.count("x") == 0);
}

TEST_CASE("print: expected shapes") {
  CHECK(Formula::disj({V("a"), V("b")}).to_string() == "a \\/ b");
  CHECK(Formula::imp(V("a"), Formula::imp(V("b"), V("c"))).to_string() == "a -> b -> c");
  CHECK(Formula::mu("x", Formula::disj({V("b"), V("x")})).to_string() == "mu x. (b \\/ x)");
  CHECK(Formula::imp(Formula::imp(V("a"), V("b")), V("c")).to_string() == "(a -> b) -> c");
}

TEST_CASE("canonicalization: units and absorption") {
  CHECK(Formula::disj({V("b"), Formula::bot()}) == V("b"));
  CHECK(Formula::conj({V("b"), Formula::top()}) == V("b"));
  CHECK(Formula::disj({V("b"), Formula::top()}) == Formula::top());
  CHECK(Formula::conj({V("b"), Formula::bot()}) == Formula::bot());
  CHECK(Formula::imp(V("a"), Formula::top()) == Formula::top());
  CHECK(Formula::imp(Formula::top(), V("a")) == V("a"));
  CHECK(Formula::imp(Formula::bot(), V("a")) == Formula::top());
  // flattening + dedup + sorting
  CHECK(Formula::disj({V("b"), Formula::disj({V("a"), V("b")})}) ==
        Formula::disj({V("a"), V("b")}));
  CHECK(Formula::conj({V("b"), V("a")}) == Formula::conj({V("a"), V("b")}));
}

TEST_CASE("substitute") {
  CHECK(substitute(Formula::disj({V("b"), V("x")}), "x", Formula::bot()) == V("b"));
  CHECK(substitute(Formula::imp(V("x"), V("a")), "x", V("g")) == Formula::imp(V("g"), V("a")));
  Formula bound = Formula::mu("x", Formula::disj({V("b"), V("x")}));
  CHECK(substitute(bound, "x", V("a")) == bound);

  // capture avoidance: substituting a formula mentioning the binder name
  Formula f = Formula::mu("y", Formula::disj({V("x"), V("y")}));
  Formula g = substitute(f, "x", V("y"));
  CHECK(g.is(Kind::Mu));
  CHECK(g.name() != "y");
  CHECK(g.body() == Formula::disj({V("y"), Formula::var(g.name())}));
}

TEST_CASE("iterate") {
  CHECK(iterate(Formula::disj({V("b"), V("x")}), "x", 2, Formula::bot()) == V("b"));
  CHECK(iterate(V("x"), "x", 0, Formula::top()) == Formula::top());
  // ((x -> b) -> a) at F gives a, since (F -> b) collapses to T
  CHECK(iterate(Formula::imp(Formula::imp(V("x"), V("b")), V("a")), "x", 1, Formula::bot()) ==
        V("a"));
}

TEST_CASE("classify") {
  CHECK(classify(Formula::disj({V("b"), V("x")}), "x") == VarClass::StronglyPositive);
  CHECK(classify(Formula::imp(Formula::imp(V("x"), V("c")), V("a")), "x") ==
        VarClass::WeaklyNegative);
  CHECK(classify(V("a"), "x") == VarClass::Absent);
  CHECK(classify(Formula::imp(V("x"), V("a")), "x") == VarClass::NonPositive);
  Formula mixed = Formula::disj({V("x"), Formula::imp(Formula::imp(V("x"), V("c")), V("a"))});
  CHECK(classify(mixed, "x") == VarClass::MixedPositive);
  // (x -> y) -> (x \/ z) -> w: the doubly-nested occurrence is positive, the
  // occurrence one antecedent deep is negative
  Formula two = parse("(x -> y) -> (x \\/ z) -> w");
  PolarityReport rep = polarity(two, "x");
  REQUIRE(rep.occurrences.size() == 2);
  int positives = 0, negatives = 0;
  for (const auto& o : rep.occurrences)
    (o.sign == Sign::Positive ? positives : negatives)++;
  CHECK(positives == 1);
  CHECK(negatives == 1);
  CHECK(classify(two, "x") == VarClass::NonPositive);
}

TEST_CASE("size conventions") {
  CHECK(V("a").size() == 1);
  CHECK(Formula::imp(V("a"), V("b")).size() == 3);
  CHECK(Formula::disj({V("a"), V("b"), V("c")}).size() == 4);
  CHECK(Formula::mu("x", Formula::disj({V("b"), V("x")})).size() == 4);
  CHECK(Formula::imp(V("a"), V("b")).imp_var_count() == 3);  // 1 imp + 2 vars
}

TEST_CASE("fresh variables are deterministic") {
  std::set<std::string> avoid{"y", "y1"};
  CHECK(fresh_var("y", avoid) == "y2");
  CHECK(fresh_var("z", avoid) == "z");
}

TEST_CASE("mu constructor rejects non-positive bodies") {
  CHECK_THROWS_AS(Formula::mu("x", Formula::imp(V("x"), V("a"))), PositivityError);
  CHECK_THROWS_AS(Formula::nu("x", Formula::imp(V("x"), V("a"))), PositivityError);
  CHECK_NOTHROW(Formula::mu("x", Formula::imp(Formula::imp(V("x"), V("b")), V("a"))));
}

TEST_CASE("property: parse/print round trip") {
  Rng rng(20260810);
  std::vector<std::string> atoms = default_atoms(3);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_mu_formula(rng, atoms, 4, 2);
    CAPTURE(f.to_string());
    CHECK(parse(f.to_string()) == f);
  }
}

TEST_CASE("property: substitution composes") {
  Rng rng(7);
  std::vector<std::string> atoms = default_atoms(3);
  atoms.push_back("x");
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, atoms, 3);
    Formula g = random_formula(rng, atoms, 2);
    Formula h = random_formula(rng, atoms, 2);
    CHECK(substitute(substitute(f, "x", g), "x", h) ==
          substitute(f, "x", substitute(g, "x", h)));
  }
}

TEST_CASE("property: canonicalization preserves meaning") {
  Rng rng(99);
  std::vector<std::string> atoms = default_atoms(3);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 8);
  for (int i = 0; i < 120; ++i) {
    RawPtr r = random_raw(rng, atoms, 3);
    Formula f = to_formula(r);
    for (const auto& h : algebras) {
      std::vector<int> assign(atoms.size(), 0);
      for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = assign[k];
        CHECK(eval_raw(r, h, v) == eval(f, h, v));
        std::size_t k = 0;
        for (; k < atoms.size(); ++k) {
          if (++assign[k] < h.size()) break;
          assign[k] = 0;
        }
        if (k == atoms.size()) break;
      }
      if (h.size() > 4) break;  // keep the exhaustive part small
    }
  }
}

TEST_CASE("property: polarity matches monotonicity") {
  Rng rng(4242);
  std::vector<std::string> atoms = default_atoms(2);
  std::vector<std::string> with_x = atoms;
  with_x.push_back("x");
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  for (int i = 0; i < 80; ++i) {
    Formula f = random_formula(rng, with_x, 3);
    if (!f.has_free("x")) continue;
    bool pos = positive_in(f, "x");
    bool neg = negative_in(f, "x");
    if (!pos && !neg) continue;
    for (const auto& h : algebras) {
      std::vector<int> assign(atoms.size(), 0);
      for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = assign[k];
        for (int lo = 0; lo < h.size(); ++lo)
          for (int hi = 0; hi < h.size(); ++hi) {
            if (!h.le(lo, hi)) continue;
            v["x"] = lo;
            int at_lo = eval(f, h, v);
            v["x"] = hi;
            int at_hi = eval(f, h, v);
            if (pos) CHECK(h.le(at_lo, at_hi));
            if (neg) CHECK(h.le(at_hi, at_lo));
          }
        std::size_t k = 0;
        for (; k < atoms.size(); ++k) {
          if (++assign[k] < h.size()) break;
          assign[k] = 0;
        }
        if (k == atoms.size()) break;
      }
    }
  }
}
