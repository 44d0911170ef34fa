// Optional prover-guided simplification.  Replaces subformulas by T or F when
// provably so and removes /\ and \/ members absorbed by a sibling.  Every
// rewrite is justified by a derivability check, so the result is provably
// equivalent to the input.  Used to keep iterated substitutions compact.

#pragma once

#include "muipc/formula.hpp"
#include "muipc/prover.hpp"

namespace muipc {

Formula prover_simplify(const Formula& f, Prover& prover);

}  // namespace muipc
