// Closure ordinals and Ruitenburg numbers by prover-checked iteration,
// together with the family of applicable upper bounds and the tightness
// fixtures that realize them.
//
// cl(f) is the least n with f^{n+1}(F) provably equivalent to f^n(F);
// rho(f) is the least n with f^{n+2} provably equivalent to f^n, where the
// iteration keeps x free.  Both are finite for every IPC formula; iteration
// is capped at 2*size(f)+2 as a safety net, so hitting the cap signals a bug.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "muipc/formula.hpp"
#include "muipc/heyting.hpp"
#include "muipc/normalize.hpp"
#include "muipc/prover.hpp"

namespace muipc {

struct OrdinalResult {
  unsigned value = 0;
  std::vector<Formula> approximants;  // f^0(F) .. f^value(F)
  bool cap_hit = false;
};

struct OrdinalOptions {
  unsigned cap = 0;      // 0: use the default 2*size+2
  bool compact = false;  // prover-guided compaction of iterates (equivalence-
                         // preserving; bounds formula growth)
  bool verify = true;    // treat a cap hit as a hard error
};

unsigned default_cap(const Formula& f);

OrdinalResult closure_ordinal(const Formula& f, const std::string& x, Prover& prover,
                              const OrdinalOptions& opts = {});

unsigned ruitenburg_number(const Formula& f, const std::string& x, Prover& prover,
                           const OrdinalOptions& opts = {});

// ---------------------------------------------------------------------------
// Upper bounds
// ---------------------------------------------------------------------------

/// Disjunctive d: cl <= |Head(d)| + 1.
unsigned bound_disjunctive(const DisjunctiveFormula& d);
/// Weakly negative f with n outermost antecedents: cl <= n + 1.
unsigned bound_weakly_negative(const Formula& f, const std::string& x);
/// cl(f /\ g) <= cl(f) + cl(g) - 1, folded over a sequence.
unsigned bound_conjunction(const std::vector<unsigned>& bounds);
/// Pairing: cl(<f,g>) <= (m+1)(n+1) - 1 with m = cl_y(g), n = cl(h).
unsigned bound_bekic(unsigned m, unsigned n);
/// Rolling: cl(f o g) <= 1 + cl(g o f).
unsigned bound_roll(unsigned inner);
/// Diagonal: cl(f o Delta) <= n * m with n = cl(h), m = cl_y(f).
unsigned bound_diag(unsigned n, unsigned m);
/// Conjunctions of disjunctive formulas: rho <= (N+1)(M+1) for N distinct
/// head and M distinct side subformulas.
unsigned bound_spos(unsigned big_n, unsigned big_m);

struct BoundReport {
  std::map<std::string, unsigned> bounds;
  OrdinalResult computed;
  unsigned rho = 0;
};

/// Classifies f, computes every applicable bound, computes cl (and rho), and
/// asserts computed <= each bound (throws Error on a violation).
BoundReport verify_bounds(const Formula& f, const std::string& x, Prover& prover,
                          const OrdinalOptions& opts = {});

// ---------------------------------------------------------------------------
// Families and fixtures
// ---------------------------------------------------------------------------

/// b \/ (a1 -> x) \/ ... \/ (an -> x); converges in exactly n+1 steps.
Formula family_phi_n(unsigned n);

/// Conjunction of (x -> a_{j-1}) -> a_j for j = 1..k-1, on a (k+2)-chain with
/// a_j valued at level j+1; iterates climb the chain one level per step.
struct ChainConjFixture {
  Formula formula;
  FiniteHeytingAlgebra algebra;
  Valuation valuation;
};
ChainConjFixture family_chain_conj(unsigned k);

/// Disjunction of (x -> a_i) -> b_i over the given pairs.
Formula family_atop(const std::vector<std::pair<Formula, Formula>>& pairs);

/// Steps needed to reach the least fixed point of the two-component chain map
/// realizing tightness of the pairing bound; equals (m+1)(n+1) - 1.
unsigned bekic_tightness_steps(unsigned m, unsigned n);

}  // namespace muipc
