// Syntactic preprocessing for least fixed-point elimination: renaming the
// weakly negative occurrences of the fixed-point variable apart, computing
// the conjunction-of-disjunctive-formulas normal form, and reading off head
// and side subformulas.
//
// A formula is disjunctive in x when it is generated by
//     phi  ::=  x  |  a -> phi  |  b \/ phi  |  phi \/ phi
// with a and b free of x (connectives taken up to the canonical n-ary form).

#pragma once

#include <string>
#include <vector>

#include "muipc/formula.hpp"

namespace muipc {

bool is_disjunctive(const Formula& f, const std::string& x);

/// A formula checked to be disjunctive in its distinguished variable.
class DisjunctiveFormula {
 public:
  DisjunctiveFormula(Formula f, std::string x);  // throws DomainError
  const Formula& formula() const { return formula_; }
  const std::string& var() const { return var_; }

 private:
  Formula formula_;
  std::string var_;
};

struct SplitResult {
  Formula renamed;       // strongly positive in spos_var, weakly negative in wneg_var
  std::string spos_var;  // the original variable x
  std::string wneg_var;  // fresh y; unused when the input had no weakly
                         // negative occurrence of x
  bool has_weakly_negative = false;
};

/// Renames every weakly negative occurrence of x to a fresh variable.
/// Requires x positive in f.
SplitResult split(const Formula& f, const std::string& x);

struct NormalForm {
  Formula x_free_part;             // no occurrence of x
  std::vector<Formula> disjuncts;  // each disjunctive in x
};

/// Conjunctive normal form over disjunctive formulas.  Requires f strongly
/// positive in x with at least one occurrence of x.  The conjunction of
/// x_free_part and the disjuncts is provably equivalent to f.
NormalForm to_normal_form(const Formula& f, const std::string& x);

struct HeadSide {
  std::vector<Formula> head;  // sorted, unique
  std::vector<Formula> side;  // sorted, unique
};

/// Head and side subformulas of a disjunctive formula.
HeadSide head_side(const DisjunctiveFormula& d);

}  // namespace muipc
