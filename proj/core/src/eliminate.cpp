#include "muipc/eliminate.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "muipc/simplify.hpp"

namespace muipc {

const char* step_rule_name(StepRule r) {
  switch (r) {
    case StepRule::Split: return "Split";
    case StepRule::NormalForm: return "NormalForm";
    case StepRule::DisjunctiveMu: return "DisjunctiveMu";
    case StepRule::WnDecompose: return "WnDecompose";
    case StepRule::BekicStep: return "BekicStep";
    case StepRule::NuTop: return "NuTop";
    case StepRule::Rolling: return "Rolling";
    case StepRule::Recurse: return "Recurse";
  }
  return "?";
}

std::string EliminationTrace::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out << i << ' ' << step_rule_name(steps[i].rule) << ": "
        << steps[i].input.to_string() << "  ==>  " << steps[i].output.to_string() << '\n';
  }
  for (const Obligation& o : obligations) {
    out << "obligation" << (o.note.empty() ? "" : " [" + o.note + "]") << ": "
        << o.lhs.to_string() << "  ==  " << o.rhs.to_string()
        << (o.verified ? "  (verified)" : "") << '\n';
  }
  return out.str();
}

std::string EliminationTrace::to_json() const {
  nlohmann::json j;
  j["steps"] = nlohmann::json::array();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    j["steps"].push_back({{"step", i},
                          {"rule", step_rule_name(steps[i].rule)},
                          {"input", steps[i].input.to_string()},
                          {"output", steps[i].output.to_string()}});
  }
  j["obligations"] = nlohmann::json::array();
  for (const Obligation& o : obligations) {
    j["obligations"].push_back({{"lhs", o.lhs.to_string()},
                                {"rhs", o.rhs.to_string()},
                                {"verified", o.verified},
                                {"note", o.note}});
  }
  return j.dump(2);
}

namespace {

void add_step(EliminationTrace* trace, StepRule rule, const Formula& in, const Formula& out) {
  if (trace) trace->steps.push_back({rule, in, out});
}

void add_obligation(EliminationTrace* trace, const Formula& lhs, const Formula& rhs,
                    const std::string& note) {
  if (trace) trace->obligations.push_back({lhs, rhs, false, note});
}

void discharge(EliminationTrace* trace, Prover& prover) {
  if (!trace) return;
  for (Obligation& o : trace->obligations) {
    if (o.verified) continue;
    if (!prover.equiv(o.lhs, o.rhs))
      throw Error("obligation failed" + (o.note.empty() ? "" : " [" + o.note + "]") + ": " +
                  o.lhs.to_string() + "  ==  " + o.rhs.to_string());
    o.verified = true;
  }
}

}  // namespace

Formula nu_eliminate(const Formula& f, const std::string& x, Prover& prover,
                     EliminationTrace* trace, const EliminationOptions& opts) {
  if (!f.fixed_point_free())
    throw DomainError("nu_eliminate expects a fixed-point-free body");
  if (!positive_in(f, x))
    throw PositivityError("nu_eliminate: '" + x + "' is not positive in " + f.to_string());
  Formula result = substitute(f, x, Formula::top());
  add_step(trace, StepRule::NuTop, f, result);
  add_obligation(trace, result, substitute(f, x, result), "nu: f(T) = f(f(T))");
  if (opts.verify) discharge(trace, prover);
  return result;
}

Formula mu_disjunctive(const DisjunctiveFormula& d, Prover& prover,
                       EliminationTrace* trace, const EliminationOptions& opts) {
  HeadSide hs = head_side(d);
  Formula result = Formula::imp(Formula::conj(hs.head), Formula::disj(hs.side));
  add_step(trace, StepRule::DisjunctiveMu, d.formula(), result);
  add_obligation(trace, result, substitute(d.formula(), d.var(), result),
                 "mu of disjunctive: fixed point");
  if (opts.verify) discharge(trace, prover);
  return result;
}

// ---------------------------------------------------------------------------
// Weakly negative elimination
// ---------------------------------------------------------------------------

namespace {

// Collects the outermost implication antecedents containing x, in canonical
// tree order, without descending into them.
void maximal_antecedents(const Formula& f, const std::string& x, std::vector<Formula>& out) {
  if (!f.has_free(x)) return;
  switch (f.kind()) {
    case Kind::Var:
      // A strongly positive occurrence; the caller checks weak negativity.
      return;
    case Kind::And:
    case Kind::Or:
      for (const Formula& k : f.children()) maximal_antecedents(k, x, out);
      return;
    case Kind::Imp:
      if (f.antecedent().has_free(x)) {
        if (std::find(out.begin(), out.end(), f.antecedent()) == out.end())
          out.push_back(f.antecedent());
      }
      maximal_antecedents(f.consequent(), x, out);
      return;
    case Kind::Mu:
    case Kind::Nu:
      maximal_antecedents(f.body(), x, out);
      return;
    default:
      return;
  }
}

// Replaces each outermost antecedent equal to some psis[i] by vars[i].
Formula abstract_antecedents(const Formula& f, const std::string& x,
                             const std::vector<Formula>& psis,
                             const std::vector<std::string>& vars) {
  if (!f.has_free(x)) return f;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children())
        kids.push_back(abstract_antecedents(k, x, psis, vars));
      return f.is(Kind::And) ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    }
    case Kind::Imp: {
      Formula a = f.antecedent();
      if (a.has_free(x)) {
        auto it = std::find(psis.begin(), psis.end(), a);
        if (it == psis.end())
          throw DomainError("wn_decompose: antecedent not collected: " + a.to_string());
        a = Formula::var(vars[static_cast<std::size_t>(it - psis.begin())]);
      }
      return Formula::imp(std::move(a), abstract_antecedents(f.consequent(), x, psis, vars));
    }
    case Kind::Mu:
    case Kind::Nu: {
      Formula body = abstract_antecedents(f.body(), x, psis, vars);
      return f.is(Kind::Mu) ? Formula::mu(f.name(), std::move(body))
                            : Formula::nu(f.name(), std::move(body));
    }
    default:
      return f;
  }
}

}  // namespace

WnDecomposition wn_decompose(const Formula& f, const std::string& x) {
  if (!positive_in(f, x))
    throw PositivityError("wn_decompose: '" + x + "' is not positive in " + f.to_string());
  if (!weakly_negative_in(f, x))
    throw DomainError("wn_decompose: '" + x + "' is not weakly negative in " + f.to_string());
  WnDecomposition d;
  if (!f.has_free(x)) {
    d.psi0 = f;
    return d;
  }
  maximal_antecedents(f, x, d.psis);
  std::set<std::string> avoid(f.free_vars().begin(), f.free_vars().end());
  avoid.insert(x);
  for (std::size_t i = 0; i < d.psis.size(); ++i) {
    std::string v = fresh_var("y" + std::to_string(i + 1), avoid);
    avoid.insert(v);
    d.vars.push_back(std::move(v));
  }
  d.psi0 = abstract_antecedents(f, x, d.psis, d.vars);
  return d;
}

namespace {

std::vector<Formula> solve_rec(const std::vector<std::string>& vars,
                               const std::vector<Formula>& rhs, std::size_t from,
                               EliminationTrace* trace) {
  const std::size_t n = vars.size() - from;
  if (n == 0) return {};
  // Solve the subsystem over vars[from+1..] with vars[from] as a parameter,
  // plug its solution into the first equation, close that one by
  // T-substitution, then resolve the parameter everywhere.
  std::vector<Formula> sub = solve_rec(vars, rhs, from + 1, trace);
  Formula h = rhs[from];
  for (std::size_t j = 0; j < sub.size(); ++j)
    h = substitute(h, vars[from + 1 + j], sub[j]);
  add_step(trace, StepRule::BekicStep, rhs[from], h);
  Formula nu1 = substitute(h, vars[from], Formula::top());
  add_step(trace, StepRule::NuTop, h, nu1);
  std::vector<Formula> result{nu1};
  for (Formula& s : sub) result.push_back(substitute(s, vars[from], nu1));
  return result;
}

}  // namespace

std::vector<Formula> solve_gfp_system(const GfpSystem& system, Prover& prover,
                                      EliminationTrace* trace, const EliminationOptions& opts) {
  if (system.vars.size() != system.rhs.size())
    throw DomainError("gfp system: variable/equation count mismatch");
  for (const Formula& r : system.rhs) {
    for (const std::string& v : system.vars)
      if (!positive_in(r, v))
        throw DomainError("gfp system: '" + v + "' is not positive in " + r.to_string());
  }
  std::vector<Formula> nus = solve_rec(system.vars, system.rhs, 0, trace);
  for (std::size_t i = 0; i < nus.size(); ++i) {
    Formula instantiated = system.rhs[i];
    for (std::size_t j = 0; j < nus.size(); ++j)
      instantiated = substitute(instantiated, system.vars[j], nus[j]);
    add_obligation(trace, nus[i], instantiated, "gfp system: equation " + std::to_string(i + 1));
  }
  if (opts.verify) discharge(trace, prover);
  return nus;
}

Formula mu_weakly_negative(const Formula& f, const std::string& x, Prover& prover,
                           EliminationTrace* trace, const EliminationOptions& opts) {
  if (!f.has_free(x)) return f;
  WnDecomposition d = wn_decompose(f, x);
  add_step(trace, StepRule::WnDecompose, f, d.psi0);
  GfpSystem system;
  system.vars = d.vars;
  system.rhs.reserve(d.psis.size());
  for (const Formula& psi : d.psis) system.rhs.push_back(substitute(psi, x, d.psi0));
  std::vector<Formula> nus = solve_gfp_system(system, prover, trace, opts);
  Formula result = d.psi0;
  for (std::size_t i = 0; i < nus.size(); ++i)
    result = substitute(result, d.vars[i], nus[i]);
  add_step(trace, StepRule::Rolling, f, result);
  add_obligation(trace, result, substitute(f, x, result), "mu of weakly negative: fixed point");
  if (opts.verify) discharge(trace, prover);
  return result;
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

namespace {

Formula mu_pipeline(const Formula& f, const std::string& x, Prover& prover,
                    EliminationTrace* trace, const EliminationOptions& opts) {
  if (!f.has_free(x)) return f;

  SplitResult s = split(f, x);
  Formula stage = s.renamed;
  if (s.has_weakly_negative) add_step(trace, StepRule::Split, f, stage);

  if (stage.has_free(x)) {
    NormalForm nf = to_normal_form(stage, x);
    std::vector<Formula> conjuncts{nf.x_free_part};
    for (const Formula& d : nf.disjuncts) conjuncts.push_back(d);
    add_step(trace, StepRule::NormalForm, stage, Formula::conj(conjuncts));
    add_obligation(trace, stage, Formula::conj(conjuncts), "normal form");
    std::vector<Formula> closed{nf.x_free_part};
    for (const Formula& d : nf.disjuncts)
      closed.push_back(mu_disjunctive(DisjunctiveFormula(d, x), prover, trace, {}));
    stage = Formula::conj(std::move(closed));
  }
  // else: every occurrence of x was weakly negative and was renamed away.

  Formula result = s.has_weakly_negative
                       ? mu_weakly_negative(stage, s.wneg_var, prover, trace, {})
                       : stage;
  add_obligation(trace, result, substitute(f, x, result), "mu: fixed point");
  if (opts.verify) discharge(trace, prover);
  return result;
}

}  // namespace

std::pair<Formula, EliminationTrace> mu_eliminate(const Formula& f, const std::string& x,
                                                  Prover& prover,
                                                  const EliminationOptions& opts) {
  if (!f.fixed_point_free())
    throw DomainError("mu_eliminate expects a fixed-point-free body");
  if (!positive_in(f, x))
    throw PositivityError("mu_eliminate: '" + x + "' is not positive in " + f.to_string());
  EliminationTrace trace;
  Formula result = mu_pipeline(f, x, prover, &trace, opts);
  if (opts.simplify) result = prover_simplify(result, prover);
  return {result, std::move(trace)};
}

namespace {

Formula eliminate_rec(const Formula& f, Prover& prover, EliminationTrace* trace,
                      const EliminationOptions& opts) {
  if (f.fixed_point_free()) return f;
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children())
        kids.push_back(eliminate_rec(k, prover, trace, opts));
      return f.is(Kind::And) ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    }
    case Kind::Imp:
      return Formula::imp(eliminate_rec(f.antecedent(), prover, trace, opts),
                          eliminate_rec(f.consequent(), prover, trace, opts));
    case Kind::Mu:
    case Kind::Nu: {
      Formula body = eliminate_rec(f.body(), prover, trace, opts);
      Formula out = f.is(Kind::Mu)
                        ? mu_pipeline(body, f.name(), prover, trace, {})
                        : nu_eliminate(body, f.name(), prover, trace, {});
      add_step(trace, StepRule::Recurse, f, out);
      return out;
    }
    default:
      return f;
  }
}

}  // namespace

std::pair<Formula, EliminationTrace> eliminate_all(const Formula& f, Prover& prover,
                                                   const EliminationOptions& opts) {
  EliminationTrace trace;
  Formula result = eliminate_rec(f, prover, &trace, opts);
  if (opts.simplify) result = prover_simplify(result, prover);
  if (opts.verify) discharge(&trace, prover);
  return {result, std::move(trace)};
}

}  // namespace muipc
