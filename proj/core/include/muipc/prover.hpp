// Decision procedure for intuitionistic propositional sequents.
//
// The implementation is a contraction-free sequent calculus (Dyckhoff's
// G4ip/LJT): left implication splits on the shape of the antecedent, so
// proof search terminates without loop checking.  Results are memoized on
// canonicalized sequents; the environment variable MUIPC_PROVER_MEMO_MAX
// caps the table (the table is flushed when the cap is exceeded).

#pragma once

#include <cstdint>
#include <vector>

#include "muipc/formula.hpp"

namespace muipc {

struct Sequent {
  std::vector<Formula> context;  // finite multiset
  Formula goal;
};

struct ProofStats {
  std::uint64_t nodes = 0;
  std::uint32_t max_depth = 0;
};

struct ProofOutcome {
  bool derivable = false;
  ProofStats stats;
};

class Prover {
 public:
  Prover();
  ~Prover();
  Prover(const Prover&) = delete;
  Prover& operator=(const Prover&) = delete;

  /// Decides the sequent.  Throws DomainError if any formula contains mu/nu.
  ProofOutcome prove(const Sequent& s);

  bool proves(const std::vector<Formula>& context, const Formula& goal);
  bool valid(const Formula& f) { return proves({}, f); }
  bool entails(const std::vector<Formula>& context, const Formula& goal) {
    return proves(context, goal);
  }

  /// Provable equivalence: |- f -> g and |- g -> f.
  bool equiv(const Formula& f, const Formula& g);

  /// f is provably below g.
  bool leq(const Formula& f, const Formula& g) { return proves({f}, g); }

  std::size_t memo_size() const;
  void clear_memo();

  /// Shared instance; safe for concurrent use.
  static Prover& global();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace muipc
