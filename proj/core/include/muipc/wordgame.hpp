// Combinatorics of disjunctive formulas over two disjoint atom alphabets:
// supports, word formulas, branches, the prefix/suffix cover relation on
// supports, the closed form of iterated conjunctions, and an exhaustive
// two-player game check of the convergence bound (Adam picks a conjunct,
// Eve picks a disjunct; Eve follows a memory strategy over supports).

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "muipc/formula.hpp"
#include "muipc/prover.hpp"

namespace muipc {

struct SuppPair {
  std::set<std::string> A;  // head atoms
  std::set<std::string> B;  // side atoms

  bool operator==(const SuppPair& o) const { return A == o.A && B == o.B; }
  bool operator<(const SuppPair& o) const { return A != o.A ? A < o.A : B < o.B; }
  bool empty() const { return A.empty() && B.empty(); }
};

using Word = std::vector<SuppPair>;

struct Alphabets {
  std::set<std::string> A;
  std::set<std::string> B;
  std::string x = "x";

  void validate() const;  // disjointness, x not an atom
};

/// Union of head-position and side-position atoms across the formulas; throws
/// DomainError if some atom occurs in both positions.
Alphabets infer_alphabets(const std::vector<Formula>& fs, const std::string& x);

/// Membership in the fragment: x | [A]phi | (\/B) \/ phi | phi \/ phi with
/// A a set of head atoms and B a set of side atoms.
bool in_fragment(const Formula& f, const Alphabets& ab);

SuppPair supp(const Formula& f, const Alphabets& ab);

/// [/\A](\/B \/ x) for one letter; words compose by substitution for x.
Formula letter_formula(const SuppPair& letter, const std::string& x);
Formula word_formula(const Word& w, const std::string& x);

std::set<Word> branches(const Formula& f, const Alphabets& ab);
Formula br(const Formula& f, const Alphabets& ab);
bool is_star_formula(const Formula& f, const Alphabets& ab);

/// (A,B) is covered by w when for some split point l, A is inside the union
/// of the first l head sets and B inside the union of the side sets from
/// position l on (l = 0 means A must be empty).
bool triangle_less(const SuppPair& p, const Word& w);

/// /\_i letter_formula(supp(f_i)); with a prover, additionally checks the
/// closed-form identity against the rho-th iterate of /\_i f_i.
Formula closed_form(const std::vector<Formula>& fs, const Alphabets& ab,
                    Prover* verify_with = nullptr);

struct GameResult {
  bool eve_wins_all = false;
  /// One losing play as (conjunct index, disjunct index) pairs, if any.
  std::optional<std::vector<std::pair<int, int>>> losing_play;
  std::uint64_t positions = 0;
};

struct GameLimits {
  std::uint64_t max_positions = 50'000'000;
};

/// Plays Eve's memory strategy against every Adam move sequence of length
/// rounds.  Each conjunct must be a star formula; conjuncts are padded with
/// the empty word so all have the same width.
GameResult play_game(const std::vector<Formula>& star_conjuncts, unsigned rounds,
                     const Alphabets& ab, const GameLimits& limits = {});

}  // namespace muipc
