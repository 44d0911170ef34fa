#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muipc/heyting.hpp"
#include "muipc/ordinals.hpp"
#include "muipc/prover.hpp"
#include "support/gen.hpp"

using namespace muipc;
using namespace muipc::testgen;

namespace {
Formula F(const char* text) { return parse(text); }

void for_all_valuations(const FiniteHeytingAlgebra& h, const std::vector<std::string>& vars,
                        const std::function<void(const Valuation&)>& body) {
  std::vector<int> assign(vars.size(), 0);
  for (;;) {
    Valuation v;
    for (std::size_t k = 0; k < vars.size(); ++k) v[vars[k]] = assign[k];
    body(v);
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      if (++assign[k] < h.size()) break;
      assign[k] = 0;
    }
    if (k == vars.size()) break;
  }
}
}  // namespace

TEST_CASE("upset algebras of tiny posets") {
  FiniteHeytingAlgebra two = FiniteHeytingAlgebra::upset_algebra(FinitePoset::discrete(1));
  CHECK(two.size() == 2);
  CHECK(two.imp(two.top(), two.bot()) == two.bot());

  FiniteHeytingAlgebra three = FiniteHeytingAlgebra::upset_algebra(FinitePoset::chain(2));
  CHECK(three.size() == 3);

  FiniteHeytingAlgebra diamond = FiniteHeytingAlgebra::upset_algebra(FinitePoset::discrete(2));
  CHECK(diamond.size() == 4);
  // the two incomparable middle elements
  int m1 = -1, m2 = -1;
  for (int e = 0; e < 4; ++e) {
    if (e == diamond.bot() || e == diamond.top()) continue;
    (m1 < 0 ? m1 : m2) = e;
  }
  CHECK(diamond.meet(m1, m2) == diamond.bot());
  CHECK(diamond.join(m1, m2) == diamond.top());
  CHECK(diamond.imp(m1, m2) == m2);
}

TEST_CASE("chain algebra") {
  FiniteHeytingAlgebra two = FiniteHeytingAlgebra::chain(2);
  CHECK(two.size() == 2);
  FiniteHeytingAlgebra c3 = FiniteHeytingAlgebra::chain(3);
  const int bot = c3.bot(), mid = 1, top = c3.top();
  CHECK(c3.imp(mid, bot) == bot);
  CHECK(c3.imp(bot, mid) == top);
  CHECK(c3.imp(top, mid) == mid);
  CHECK_THROWS_AS(FiniteHeytingAlgebra::chain(0), DomainError);
}

TEST_CASE("law suite holds on every constructed algebra up to carrier 8") {
  for (const auto& h : small_algebras(3, 8)) CHECK_NOTHROW(h.check_laws());
  CHECK_NOTHROW(FiniteHeytingAlgebra::chain(8).check_laws());
}

TEST_CASE("poset validation") {
  FinitePoset bad = FinitePoset::discrete(2);
  bad.set(0, 1);
  bad.set(1, 0);
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(FinitePoset::parse("0"), DomainError);
  FinitePoset p = FinitePoset::parse("3\n0<1\n1<2\n");
  CHECK(p.le(0, 2));  // closure
}

TEST_CASE("eval") {
  FiniteHeytingAlgebra c3 = FiniteHeytingAlgebra::chain(3);
  Valuation v{{"a", 1}, {"b", 0}};
  CHECK(eval(F("T -> a"), c3, v) == 1);
  CHECK(eval(F("mu x. (b \\/ x)"), c3, v) == 0);
  // Peirce instance at a = middle, b = bottom
  CHECK(eval(F("((a -> b) -> a) -> a"), c3, v) == 1);
  CHECK_THROWS_AS(eval(F("q"), c3, v), DomainError);
}

TEST_CASE("lfp and gfp iteration") {
  FiniteHeytingAlgebra c3 = FiniteHeytingAlgebra::chain(3);
  Valuation v{{"a", 1}, {"b", 1}};
  IterResult r = lfp_iterate(F("b \\/ x"), "x", c3, v);
  CHECK(r.value == 1);
  CHECK(r.steps == 1);

  CHECK(gfp_iterate(F("x"), "x", c3, {}).value == c3.top());
  CHECK(gfp_iterate(F("x"), "x", c3, {}).steps == 0);
  IterResult g = gfp_iterate(F("a /\\ x"), "x", c3, v);
  CHECK(g.value == 1);
  CHECK(g.steps == 1);

  CHECK_THROWS_AS(lfp_iterate(F("x -> a"), "x", c3, v), DomainError);
}

TEST_CASE("chain-conjunction fixture climbs one level per step") {
  for (unsigned k = 2; k <= 3; ++k) {
    ChainConjFixture fx = family_chain_conj(k);
    IterResult r = lfp_iterate(fx.formula, "x", fx.algebra, fx.valuation);
    CHECK(r.value == fx.algebra.top());
    CHECK(r.steps == static_cast<int>(k));
  }
  // k = 1: empty conjunction, T in one step
  ChainConjFixture fx1 = family_chain_conj(1);
  CHECK(fx1.formula == Formula::top());
}

TEST_CASE("phi_n on the subset model converges in n+1 steps") {
  for (int n = 1; n <= 2; ++n) {
    KnModel m = kn_model(n);
    Formula f = family_phi_n(static_cast<unsigned>(n));
    IterResult r = lfp_iterate(f, "x", m.algebra, m.valuation);
    CHECK(r.steps == n + 1);
    CHECK(r.value == m.algebra.top());
  }
}

TEST_CASE("gfp of a polynomial stabilizes after one step") {
  Rng rng(808);
  std::vector<std::string> atoms = default_atoms(2);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  for (int i = 0; i < 60; ++i) {
    Formula f = random_positive(rng, atoms, "x", 3);
    for (const auto& h : algebras) {
      for_all_valuations(h, atoms, [&](const Valuation& v) {
        CHECK(gfp_iterate(f, "x", h, v).steps <= 1);
      });
    }
  }
}

TEST_CASE("refute_equiv") {
  auto witness = refute_equiv(F("((a -> b) -> a) -> a"), Formula::top(), 3);
  REQUIRE(witness.has_value());
  CHECK(witness->poset.n == 2);  // the 2-chain poset gives the 3-chain algebra
  CHECK(witness->poset.le(0, 1));

  CHECK_FALSE(refute_equiv(F("a"), F("a"), 3).has_value());
  CHECK(refute_equiv(F("a \\/ (a -> F)"), Formula::top(), 3).has_value());
}

TEST_CASE("poset enumeration counts") {
  CHECK(enumerate_posets(1).size() == 1);
  CHECK(enumerate_posets(2).size() == 1 + 2);
  CHECK(enumerate_posets(3).size() == 1 + 2 + 5);
  CHECK(enumerate_posets(4).size() == 1 + 2 + 5 + 16);
  CHECK(enumerate_posets(5).size() == 1 + 2 + 5 + 16 + 63);
}

TEST_CASE("property: polynomials are strong") {
  Rng rng(17);
  std::vector<std::string> atoms = default_atoms(2);
  std::vector<std::string> with_xy = atoms;
  with_xy.push_back("x");
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  for (int i = 0; i < 60; ++i) {
    Formula f = random_formula(rng, with_xy, 3);
    for (const auto& h : algebras) {
      for_all_valuations(h, atoms, [&](const Valuation& v) {
        for (int x = 0; x < h.size(); ++x)
          for (int y = 0; y < h.size(); ++y) {
            Valuation vy = v;
            vy["x"] = y;
            int fy = eval(f, h, vy);
            vy["x"] = h.meet(x, y);
            int fxy = eval(f, h, vy);
            CHECK(h.le(h.meet(x, fy), fxy));  // x /\ f(y) <= f(x /\ y)
          }
      });
    }
  }
}

TEST_CASE("property: lfp commutes with a-> and a/\\ guards") {
  Rng rng(23);
  std::vector<std::string> atoms = default_atoms(2);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  for (int i = 0; i < 40; ++i) {
    Formula f = random_positive(rng, atoms, "x", 2);
    Formula guarded_imp = Formula::imp(Formula::var("a"), f);
    Formula guarded_conj = Formula::conj({Formula::var("a"), f});
    for (const auto& h : algebras) {
      for_all_valuations(h, atoms, [&](const Valuation& v) {
        int mu_f = lfp_iterate(f, "x", h, v).value;
        CHECK(lfp_iterate(guarded_imp, "x", h, v).value == h.imp(v.at("a"), mu_f));
        CHECK(lfp_iterate(guarded_conj, "x", h, v).value == h.meet(v.at("a"), mu_f));
      });
    }
  }
}

TEST_CASE("property: rolling, diagonal and pairing identities") {
  Rng rng(29);
  std::vector<std::string> atoms = default_atoms(2);
  std::vector<FiniteHeytingAlgebra> algebras = small_algebras(3, 5);
  for (int i = 0; i < 30; ++i) {
    Formula f = random_positive(rng, atoms, "x", 2);
    Formula g = random_positive(rng, atoms, "x", 2);
    for (const auto& h : algebras) {
      for_all_valuations(h, atoms, [&](const Valuation& v) {
        // mu.(f o g) = f(mu.(g o f))
        Formula fog = substitute(f, "x", g);
        Formula gof = substitute(g, "x", f);
        int mu_fog = lfp_iterate(fog, "x", h, v).value;
        int mu_gof = lfp_iterate(gof, "x", h, v).value;
        Valuation vx = v;
        vx["x"] = mu_gof;
        CHECK(mu_fog == eval(f, h, vx));

        // mu_x.k(x,x) = mu_x.mu_y.k(x,y) with k(x,y) = f(x) \/ g(y)
        Formula k_diag = Formula::disj({f, g});
        int lhs = lfp_iterate(k_diag, "x", h, v).value;
        // inner: for fixed x, mu_y.(f(x) \/ g(y)); outer iterates x
        int outer = h.bot();
        for (;;) {
          Valuation vo = v;
          vo["x"] = outer;
          int fx = eval(f, h, vo);
          int inner = h.bot();
          for (;;) {
            Valuation vi = v;
            vi["x"] = inner;
            int next = h.join(fx, eval(g, h, vi));
            if (next == inner) break;
            inner = next;
          }
          if (inner == outer) break;
          outer = inner;
        }
        CHECK(lhs == outer);

        // pairing: mu.<F,G> componentwise equals the Bekic solution, with
        // F(x,y) = f(x) \/ g(y) and G(x,y) = f(y) /\ g(x)
        auto bigF = [&](int x, int y) {
          Valuation w = v;
          w["x"] = x;
          int fx = eval(f, h, w);
          w["x"] = y;
          return h.join(fx, eval(g, h, w));
        };
        auto bigG = [&](int x, int y) {
          Valuation w = v;
          w["x"] = y;
          int fy = eval(f, h, w);
          w["x"] = x;
          return h.meet(fy, eval(g, h, w));
        };
        int jx = h.bot(), jy = h.bot();
        for (;;) {
          int nx = bigF(jx, jy), ny = bigG(jx, jy);
          if (nx == jx && ny == jy) break;
          jx = nx;
          jy = ny;
        }
        auto mu_y_G = [&](int x) {
          int cur = h.bot();
          for (;;) {
            int next = bigG(x, cur);
            if (next == cur) return cur;
            cur = next;
          }
        };
        int mu1 = h.bot();
        for (;;) {
          int next = bigF(mu1, mu_y_G(mu1));
          if (next == mu1) break;
          mu1 = next;
        }
        int mu2 = mu_y_G(mu1);
        CHECK(jx == mu1);
        CHECK(jy == mu2);
      });
    }
  }
}
