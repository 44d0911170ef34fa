// Finite Heyting algebras with full operation tables, used as a brute-force
// semantic oracle: evaluation, Knaster-Tarski iteration for mu/nu, and
// exhaustive counterexample search over upset algebras of small posets.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "muipc/formula.hpp"

namespace muipc {

struct FinitePoset {
  int n = 0;
  std::vector<std::uint8_t> leq;  // n*n, row-major: leq[i*n+j] iff i <= j

  bool le(int i, int j) const { return leq[static_cast<std::size_t>(i) * n + j] != 0; }
  void set(int i, int j) { leq[static_cast<std::size_t>(i) * n + j] = 1; }

  static FinitePoset discrete(int n);
  static FinitePoset chain(int n);
  /// Throws DomainError unless leq is reflexive, antisymmetric and transitive.
  void validate() const;

  /// Line-based format: first line n, then one pair "i j" (or "i<j") per line.
  static FinitePoset parse(const std::string& text);
  std::string to_text() const;
};

class FiniteHeytingAlgebra {
 public:
  /// Carrier = upward-closed subsets of p; meet/join are intersection/union,
  /// U -> V is the largest upset inside (complement of U) union V.
  static FiniteHeytingAlgebra upset_algebra(const FinitePoset& p);
  /// The k-element chain: x -> a is T when x <= a, and a otherwise.
  static FiniteHeytingAlgebra chain(int k);

  int size() const { return n_; }
  int bot() const { return bot_; }
  int top() const { return top_; }
  int meet(int a, int b) const { return meet_[idx(a, b)]; }
  int join(int a, int b) const { return join_[idx(a, b)]; }
  int imp(int a, int b) const { return imp_[idx(a, b)]; }
  bool le(int a, int b) const { return leq_[idx(a, b)] != 0; }

  /// Upset bitmask of element e over the source poset (upset algebras only).
  std::uint64_t upset_mask(int e) const { return masks_.empty() ? 0 : masks_[e]; }
  bool from_poset() const { return !masks_.empty(); }
  const FinitePoset& poset() const { return poset_; }

  /// Exhaustively checks the Heyting identities; throws DomainError on failure.
  void check_laws() const;

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_ = 0;
  int bot_ = 0, top_ = 0;
  std::vector<std::uint8_t> meet_, join_, imp_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint64_t> masks_;
  FinitePoset poset_;
};

using Valuation = std::map<std::string, int>;

/// Evaluates f; mu/nu are computed by iteration from bot/top.  Throws
/// DomainError on a free variable missing from the valuation.
int eval(const Formula& f, const FiniteHeytingAlgebra& h, const Valuation& v);

struct IterResult {
  int value = 0;
  int steps = 0;  // least n with h_{n+1} == h_n
};

/// Iterates x |-> f from bot; requires x positive in f.
IterResult lfp_iterate(const Formula& f, const std::string& x,
                       const FiniteHeytingAlgebra& h, const Valuation& v);
/// Iterates x |-> f from top; requires x positive in f.
IterResult gfp_iterate(const Formula& f, const std::string& x,
                       const FiniteHeytingAlgebra& h, const Valuation& v);

/// All posets with 1..max_n elements, one representative per isomorphism class.
std::vector<FinitePoset> enumerate_posets(int max_n);

/// Upset algebras of all posets with <= max_poset_elements elements whose
/// carrier has <= max_carrier elements.
std::vector<FiniteHeytingAlgebra> small_algebras(int max_poset_elements,
                                                 int max_carrier = 64);

struct RefutationWitness {
  FinitePoset poset;
  Valuation valuation;
  int lhs = 0, rhs = 0;
};

/// Searches upset algebras of posets with up to max_poset elements for a
/// valuation separating f and g.
std::optional<RefutationWitness> refute_equiv(const Formula& f, const Formula& g,
                                              int max_poset);

/// The 2^n-world model used for the phi_n convergence fixture: worlds are the
/// subsets of {1..n} ordered by reverse inclusion, a_i holds at s iff i is not
/// in s, and b holds exactly at the empty set.
struct KnModel {
  FinitePoset poset;               // worlds: bitmask-indexed subsets of {1..n}
  FiniteHeytingAlgebra algebra;    // its upset algebra
  Valuation valuation;             // a1..an and b
};
KnModel kn_model(int n);

}  // namespace muipc
