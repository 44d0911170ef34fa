#include "muipc/simplify.hpp"

namespace muipc {

namespace {

// Drops children absorbed by a sibling: in a meet, keep lower bounds; in a
// join, keep upper bounds.  Quadratic in the number of children.
std::vector<Formula> absorb(const std::vector<Formula>& kids, Prover& prover, bool meet) {
  std::vector<bool> dropped(kids.size(), false);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (dropped[i]) continue;
    for (std::size_t j = 0; j < kids.size(); ++j) {
      if (i == j || dropped[j]) continue;
      // meet: drop kids[j] when kids[i] <= kids[j]; join: when kids[j] <= kids[i]
      bool redundant = meet ? prover.leq(kids[i], kids[j]) : prover.leq(kids[j], kids[i]);
      if (redundant) dropped[j] = true;
    }
  }
  std::vector<Formula> out;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!dropped[i]) out.push_back(kids[i]);
  return out;
}

Formula simp(const Formula& f, Prover& prover) {
  Formula reduced = f;
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children()) kids.push_back(simp(k, prover));
      kids = absorb(kids, prover, f.is(Kind::And));
      reduced = f.is(Kind::And) ? Formula::conj(std::move(kids))
                                : Formula::disj(std::move(kids));
      break;
    }
    case Kind::Imp:
      reduced = Formula::imp(simp(f.antecedent(), prover), simp(f.consequent(), prover));
      break;
    case Kind::Mu:
    case Kind::Nu: {
      Formula body = simp(f.body(), prover);
      reduced = f.is(Kind::Mu) ? Formula::mu(f.name(), std::move(body))
                               : Formula::nu(f.name(), std::move(body));
      return reduced;  // the prover cannot judge formulas with binders
    }
  }
  if (reduced.is(Kind::Top) || reduced.is(Kind::Bot) || !reduced.fixed_point_free())
    return reduced;
  if (prover.valid(reduced)) return Formula::top();
  if (prover.proves({reduced}, Formula::bot())) return Formula::bot();
  return reduced;
}

}  // namespace

Formula prover_simplify(const Formula& f, Prover& prover) { return simp(f, prover); }

}  // namespace muipc
