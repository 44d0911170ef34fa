#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muipc/heyting.hpp"
#include "muipc/prover.hpp"
#include "support/gen.hpp"

using namespace muipc;
using namespace muipc::testgen;

namespace {
Formula F(const char* text) { return parse(text); }
}  // namespace

TEST_CASE("axioms and basic sequents") {
  Prover p;
  CHECK(p.valid(F("a -> a")));
  CHECK(p.proves({F("a"), F("a -> b")}, F("b")));
  CHECK(p.valid(F("T")));
  CHECK(p.proves({F("F")}, F("a")));
  CHECK(p.entails({}, F("T")));
  CHECK_FALSE(p.entails({F("a \\/ b")}, F("a")));
  CHECK(p.entails({F("a \\/ b"), F("a -> c"), F("b -> c")}, F("c")));
}

TEST_CASE("intuitionistic refusals") {
  Prover p;
  CHECK_FALSE(p.valid(F("((a -> b) -> a) -> a")));  // Peirce
  CHECK_FALSE(p.valid(F("a \\/ (a -> F)")));        // excluded middle
  CHECK_FALSE(p.valid(F("((a -> F) -> F) -> a")));  // double negation elim
  // ... though all three are stable under double negation
  CHECK(p.valid(F("((((a -> b) -> a) -> a) -> F) -> F")));
  CHECK(p.valid(F("((a \\/ (a -> F)) -> F) -> F")));
}

TEST_CASE("equivalences") {
  Prover p;
  // nu via T-substitution is idempotent for (x -> b) -> a
  CHECK(p.equiv(F("b -> a"), F("((b -> a) -> b) -> a")));
  CHECK_FALSE(p.equiv(F("a"), F("b")));
  CHECK(p.equiv(F("a /\\ (a -> b)"), F("a /\\ b")));
  CHECK(p.equiv(F("a -> b -> c"), F("(a /\\ b) -> c")));
  CHECK(p.equiv(F("(a \\/ b) -> c"), F("(a -> c) /\\ (b -> c)")));
  CHECK(p.equiv(F("a -> (b /\\ c)"), F("(a -> b) /\\ (a -> c)")));
  // De Morgan: only one direction is an equivalence in IPC
  CHECK(p.equiv(F("(a \\/ b) -> F"), F("(a -> F) /\\ (b -> F)")));
  CHECK_FALSE(p.equiv(F("(a /\\ b) -> F"), F("(a -> F) \\/ (b -> F)")));
}

TEST_CASE("known separating formulas") {
  Prover p;
  // derivable classics
  CHECK(p.valid(F("a -> ((a -> F) -> F)")));                       // double-negation intro
  CHECK(p.valid(F("(((a -> F) -> F) -> F) -> (a -> F)")));         // triple negation collapses
  CHECK(p.valid(F("(a -> F) -> (((a -> F) -> F) -> F)")));
  CHECK(p.valid(F("(a -> b) -> ((b -> F) -> (a -> F))")));         // contraposition
  CHECK(p.equiv(F("a /\\ (b \\/ c)"), F("(a /\\ b) \\/ (a /\\ c)")));
  // axioms of proper intermediate logics stay underivable
  CHECK_FALSE(p.valid(F("((a -> F) -> (b \\/ c)) -> (((a -> F) -> b) \\/ ((a -> F) -> c))")));
  CHECK_FALSE(p.valid(F("(a -> F) \\/ ((a -> F) -> F)")));         // weak excluded middle
  CHECK_FALSE(p.valid(F("(a -> b) \\/ (b -> a)")));                // linearity
  CHECK_FALSE(p.valid(
      F("((((a -> F) -> F) -> a) -> (a \\/ (a -> F))) -> (((a -> F) -> F) \\/ (a -> F))")));
}

TEST_CASE("fixed-point binders are rejected") {
  Prover p;
  CHECK_THROWS_AS(p.valid(F("mu x. (a \\/ x)")), DomainError);
  CHECK_THROWS_AS(p.proves({F("mu x. x")}, F("a")), DomainError);
}

TEST_CASE("stats and determinism") {
  Prover p;
  ProofOutcome first = p.prove({{F("a -> b"), F("b -> c")}, F("a -> c")});
  CHECK(first.derivable);
  CHECK(first.stats.nodes > 0);
  ProofOutcome again = p.prove({{F("a -> b"), F("b -> c")}, F("a -> c")});
  CHECK(again.derivable == first.derivable);
}

TEST_CASE("memo table respects the environment cap") {
  setenv("MUIPC_PROVER_MEMO_MAX", "4", 1);
  {
    Prover tiny;
    Rng rng(1);
    std::vector<std::string> atoms = default_atoms(3);
    for (int i = 0; i < 40; ++i)
      tiny.proves({random_formula(rng, atoms, 2)}, random_formula(rng, atoms, 3));
    CHECK(tiny.memo_size() <= 4);
  }
  unsetenv("MUIPC_PROVER_MEMO_MAX");
}

TEST_CASE("memo coherence: cached equals fresh") {
  Rng rng(31337);
  std::vector<std::string> atoms = default_atoms(3);
  Prover warm;
  for (int i = 0; i < 150; ++i) {
    Formula goal = random_formula(rng, atoms, 3);
    Formula hyp = random_formula(rng, atoms, 2);
    Prover fresh;
    bool a = warm.proves({hyp}, goal);
    bool b = fresh.proves({hyp}, goal);
    CHECK(a == b);
    bool c = warm.proves({hyp}, goal);  // warm again, now memoized
    CHECK(c == a);
  }
  CHECK(warm.memo_size() > 0);
  warm.clear_memo();
  CHECK(warm.memo_size() == 0);
}

TEST_CASE("property: soundness and refutational completeness on small inputs") {
  Rng rng(20260810);
  std::vector<std::string> atoms = default_atoms(3);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(4, 16);
  Prover p;
  int underivable = 0, refuted = 0;
  for (int i = 0; i < 400; ++i) {
    Formula goal = random_formula(rng, atoms, 3);
    std::vector<Formula> ctx;
    for (int c = rng.below(3); c > 0; --c) ctx.push_back(random_formula(rng, atoms, 2));
    bool derivable = p.proves(ctx, goal);
    Formula hyp = Formula::conj(ctx);
    if (derivable) {
      // holds in every finite algebra
      for (const auto& h : algebras) {
        std::vector<int> assign(atoms.size(), 0);
        for (;;) {
          Valuation v;
          for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = assign[k];
          CHECK(h.le(eval(hyp, h, v), eval(goal, h, v)));
          std::size_t k = 0;
          for (; k < atoms.size(); ++k) {
            if (++assign[k] < h.size()) break;
            assign[k] = 0;
          }
          if (k == atoms.size()) break;
        }
      }
    } else {
      ++underivable;
      if (refute_equiv(Formula::imp(hyp, goal), Formula::top(), 4)) ++refuted;
    }
  }
  // Finite model property: on this seeded corpus every underivable sequent is
  // refuted within the 4-element poset budget.
  CHECK(underivable > 0);
  CHECK(refuted == underivable);
}

TEST_CASE("property: soundness over four atoms on algebras up to five elements") {
  Rng rng(2025);
  std::vector<std::string> atoms = default_atoms(4);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  Prover p;
  int derivable_count = 0;
  for (int i = 0; i < 200; ++i) {
    Formula goal = random_formula(rng, atoms, 3);
    Formula hyp = random_formula(rng, atoms, 2);
    if (!p.proves({hyp}, goal)) continue;
    ++derivable_count;
    for (const auto& h : algebras) {
      std::vector<int> assign(atoms.size(), 0);
      for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = assign[k];
        CHECK(h.le(eval(hyp, h, v), eval(goal, h, v)));
        std::size_t k = 0;
        for (; k < atoms.size(); ++k) {
          if (++assign[k] < h.size()) break;
          assign[k] = 0;
        }
        if (k == atoms.size()) break;
      }
    }
  }
  CHECK(derivable_count > 20);
}

TEST_CASE("property: provable equivalence implies algebra equality") {
  Rng rng(555);
  std::vector<std::string> atoms = default_atoms(3);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(4, 16);
  Prover p;
  for (int i = 0; i < 120; ++i) {
    Formula f = random_formula(rng, atoms, 3);
    Formula g = random_formula(rng, atoms, 3);
    if (!p.equiv(f, g)) continue;
    for (const auto& h : algebras) {
      std::vector<int> assign(atoms.size(), 0);
      for (;;) {
        Valuation v;
        for (std::size_t k = 0; k < atoms.size(); ++k) v[atoms[k]] = assign[k];
        CHECK(eval(f, h, v) == eval(g, h, v));
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
