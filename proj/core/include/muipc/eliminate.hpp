// Fixed-point elimination.  Greatest fixed points of positive formulas are
// reached by substituting T.  Least fixed points go through a four-stage
// pipeline: rename the weakly negative occurrences apart, normalize the
// strongly positive part into a conjunction of disjunctive formulas, close
// each disjunct with the head/side formula, then solve the remaining weakly
// negative fixed point through a greatest-solution equation system (Bekic
// elimination, one variable at a time, each one-variable greatest fixed
// point computed by substituting T).
//
// Every step records a trace entry; in verify mode each recorded proof
// obligation is discharged with the prover.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muipc/formula.hpp"
#include "muipc/normalize.hpp"
#include "muipc/prover.hpp"

namespace muipc {

enum class StepRule : std::uint8_t {
  Split,
  NormalForm,
  DisjunctiveMu,
  WnDecompose,
  BekicStep,
  NuTop,
  Rolling,
  Recurse,
};

const char* step_rule_name(StepRule r);

struct TraceStep {
  StepRule rule;
  Formula input;
  Formula output;
};

struct Obligation {
  Formula lhs;
  Formula rhs;
  bool verified = false;
  std::string note;
};

struct EliminationTrace {
  std::vector<TraceStep> steps;
  std::vector<Obligation> obligations;

  std::string to_text() const;
  std::string to_json() const;
};

struct EliminationOptions {
  bool verify = false;    // discharge all obligations with the prover
  bool simplify = false;  // prover-guided pruning of the final result
};

/// Greatest solution of { y_i = rhs_i(y_1..y_n) } where every y_j is negative
/// in every rhs_i.
struct GfpSystem {
  std::vector<std::string> vars;
  std::vector<Formula> rhs;
};

/// nu_x.f for fixed-point-free f positive in x: substitute T for x.
Formula nu_eliminate(const Formula& f, const std::string& x, Prover& prover,
                     EliminationTrace* trace = nullptr,
                     const EliminationOptions& opts = {});

/// mu_x.d for d disjunctive in x: (/\ Head) -> (\/ Side).
Formula mu_disjunctive(const DisjunctiveFormula& d, Prover& prover,
                       EliminationTrace* trace = nullptr,
                       const EliminationOptions& opts = {});

/// Writes f, weakly negative in x, as psi0(psi1(x), ..., psin(x)) where the
/// psi_i are the outermost implication antecedents containing x (so x is
/// negative in each psi_i, and the fresh placeholder variables are negative
/// in psi0).  Returns psi0 over the fresh variables, the psi_i, and the
/// fresh variable names.
struct WnDecomposition {
  Formula psi0;
  std::vector<std::string> vars;
  std::vector<Formula> psis;
};
WnDecomposition wn_decompose(const Formula& f, const std::string& x);

/// Solves the system by Bekic elimination in ascending variable order.
std::vector<Formula> solve_gfp_system(const GfpSystem& system, Prover& prover,
                                      EliminationTrace* trace = nullptr,
                                      const EliminationOptions& opts = {});

/// mu_x.f for f weakly negative in x.
Formula mu_weakly_negative(const Formula& f, const std::string& x, Prover& prover,
                           EliminationTrace* trace = nullptr,
                           const EliminationOptions& opts = {});

/// mu_x.f for fixed-point-free f positive in x; full pipeline.
std::pair<Formula, EliminationTrace> mu_eliminate(const Formula& f, const std::string& x,
                                                  Prover& prover,
                                                  const EliminationOptions& opts = {});

/// Replaces every mu/nu binder, innermost first; the result has no binders.
std::pair<Formula, EliminationTrace> eliminate_all(const Formula& f, Prover& prover,
                                                   const EliminationOptions& opts = {});

}  // namespace muipc
