#include "muipc/ordinals.hpp"

#include <algorithm>

#include "muipc/eliminate.hpp"
#include "muipc/simplify.hpp"

namespace muipc {

unsigned default_cap(const Formula& f) { return 2 * f.size() + 2; }

namespace {

unsigned effective_cap(const Formula& f, const OrdinalOptions& opts) {
  unsigned cap = opts.cap ? opts.cap : default_cap(f);
  if (cap < 1) throw DomainError("iteration cap must be at least 1");
  return cap;
}

[[noreturn]] void cap_error(const Formula& f, unsigned cap) {
  throw Error("iteration did not stabilize within cap " + std::to_string(cap) + " for " +
              f.to_string() + "; this indicates a prover bug");
}

// Compaction keeps iterate growth in check; every rewrite is prover-checked,
// so the compacted iterate is provably equivalent to the original.
Formula maybe_compact(const Formula& f, Prover& prover, const OrdinalOptions& opts,
                      unsigned step) {
  if (!opts.compact || step < 2 || f.size() < 24) return f;
  return prover_simplify(f, prover);
}

}  // namespace

OrdinalResult closure_ordinal(const Formula& f, const std::string& x, Prover& prover,
                              const OrdinalOptions& opts) {
  if (!f.fixed_point_free()) throw DomainError("closure_ordinal expects a fixed-point-free formula");
  if (!positive_in(f, x))
    throw PositivityError("closure_ordinal: '" + x + "' is not positive in " + f.to_string());
  const unsigned cap = effective_cap(f, opts);

  OrdinalResult r;
  Formula current = Formula::bot();
  r.approximants.push_back(current);
  for (unsigned n = 0; n <= cap; ++n) {
    Formula next = substitute(f, x, current);
    next = maybe_compact(next, prover, opts, n + 1);
    if (prover.equiv(next, current)) {
      r.value = n;
      return r;
    }
    r.approximants.push_back(next);
    current = next;
  }
  r.cap_hit = true;
  r.value = cap;
  if (opts.verify) cap_error(f, cap);
  return r;
}

unsigned ruitenburg_number(const Formula& f, const std::string& x, Prover& prover,
                           const OrdinalOptions& opts) {
  if (!f.fixed_point_free()) throw DomainError("ruitenburg_number expects a fixed-point-free formula");
  const unsigned cap = effective_cap(f, opts);

  // Iterates keep x free: g_0 = x, g_{k+1} = f[g_k / x].
  std::vector<Formula> iterates{Formula::var(x)};
  auto extend_to = [&](unsigned k) {
    while (iterates.size() <= k) {
      Formula next = substitute(f, x, iterates.back());
      next = maybe_compact(next, prover, opts, static_cast<unsigned>(iterates.size()));
      iterates.push_back(next);
    }
  };
  for (unsigned n = 0; n <= cap; ++n) {
    extend_to(n + 2);
    if (prover.equiv(iterates[n + 2], iterates[n])) return n;
  }
  if (opts.verify) cap_error(f, cap);
  return cap;
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

unsigned bound_disjunctive(const DisjunctiveFormula& d) {
  return static_cast<unsigned>(head_side(d).head.size()) + 1;
}

unsigned bound_weakly_negative(const Formula& f, const std::string& x) {
  return static_cast<unsigned>(wn_decompose(f, x).psis.size()) + 1;
}

unsigned bound_conjunction(const std::vector<unsigned>& bounds) {
  if (bounds.empty()) throw DomainError("bound_conjunction needs at least one bound");
  unsigned acc = bounds[0];
  for (std::size_t i = 1; i < bounds.size(); ++i) acc = acc + bounds[i] - 1;
  return acc;
}

unsigned bound_bekic(unsigned m, unsigned n) { return (m + 1) * (n + 1) - 1; }
unsigned bound_roll(unsigned inner) { return inner + 1; }
unsigned bound_diag(unsigned n, unsigned m) { return n * m; }
unsigned bound_spos(unsigned big_n, unsigned big_m) { return (big_n + 1) * (big_m + 1); }

BoundReport verify_bounds(const Formula& f, const std::string& x, Prover& prover,
                          const OrdinalOptions& opts) {
  BoundReport report;
  report.bounds["ruitenburg-cap"] = default_cap(f);
  if (is_disjunctive(f, x))
    report.bounds["disjunctive"] = bound_disjunctive(DisjunctiveFormula(f, x));
  if (f.has_free(x) && weakly_negative_in(f, x) && positive_in(f, x))
    report.bounds["weakly-negative"] = bound_weakly_negative(f, x);
  if (f.has_free(x) && strongly_positive_in(f, x)) {
    NormalForm nf = to_normal_form(f, x);
    std::vector<unsigned> per;
    std::vector<Formula> heads, sides;
    for (const Formula& d : nf.disjuncts) {
      DisjunctiveFormula df(d, x);
      per.push_back(bound_disjunctive(df));
      HeadSide hs = head_side(df);
      heads.insert(heads.end(), hs.head.begin(), hs.head.end());
      sides.insert(sides.end(), hs.side.begin(), hs.side.end());
    }
    if (!per.empty()) report.bounds["conjunction-of-disjunctive"] = bound_conjunction(per);
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
    report.bounds["spos-rho"] = bound_spos(static_cast<unsigned>(heads.size()),
                                           static_cast<unsigned>(sides.size()));
  }

  report.computed = closure_ordinal(f, x, prover, opts);
  report.rho = ruitenburg_number(f, x, prover, opts);
  for (const auto& [name, bound] : report.bounds) {
    if (report.computed.value > bound)
      throw Error("closure ordinal " + std::to_string(report.computed.value) +
                  " exceeds bound '" + name + "' = " + std::to_string(bound) + " for " +
                  f.to_string());
  }
  if (report.computed.value > report.rho)
    throw Error("closure ordinal exceeds Ruitenburg number for " + f.to_string());
  return report;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

Formula family_phi_n(unsigned n) {
  std::vector<Formula> parts{Formula::var("b")};
  for (unsigned i = 1; i <= n; ++i)
    parts.push_back(Formula::imp(Formula::var("a" + std::to_string(i)), Formula::var("x")));
  return Formula::disj(std::move(parts));
}

ChainConjFixture family_chain_conj(unsigned k) {
  if (k < 1) throw DomainError("family_chain_conj: k must be at least 1");
  // Chain F < a_0 < a_1 < ... < a_{k-1} < T; element j+1 interprets a_j.
  std::vector<Formula> conjuncts;
  Valuation v;
  for (unsigned j = 1; j + 1 <= k; ++j) {
    Formula prev = Formula::var("a" + std::to_string(j - 1));
    Formula cur = Formula::var("a" + std::to_string(j));
    conjuncts.push_back(Formula::imp(Formula::imp(Formula::var("x"), prev), cur));
  }
  for (unsigned j = 0; j < k; ++j) v["a" + std::to_string(j)] = static_cast<int>(j + 1);
  return ChainConjFixture{Formula::conj(std::move(conjuncts)),
                          FiniteHeytingAlgebra::chain(static_cast<int>(k + 2)), std::move(v)};
}

Formula family_atop(const std::vector<std::pair<Formula, Formula>>& pairs) {
  std::vector<Formula> parts;
  parts.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    parts.push_back(Formula::imp(Formula::imp(Formula::var("x"), a), b));
  return Formula::disj(std::move(parts));
}

unsigned bekic_tightness_steps(unsigned m, unsigned n) {
  if (m < 1 || n < 1) throw DomainError("bekic_tightness_steps needs m, n >= 1");
  // P is the chain {0..n}, Q the chain {0..(n+1)m}; f climbs P one level while
  // the Q component has caught up, g climbs Q toward (x+1)m.
  const int pn = static_cast<int>(n);
  const int qm = static_cast<int>((n + 1) * m);
  auto s = [&](int x) { return x < pn ? x + 1 : pn; };
  auto fmap = [&](int x, int y) {
    int z = y / static_cast<int>(m);
    return z <= x ? x : s(x);
  };
  auto gmap = [&](int x, int y) {
    int z = y / static_cast<int>(m);
    int k = y % static_cast<int>(m);
    int out = z <= x ? x * static_cast<int>(m) + k + 1 : (x + 1) * static_cast<int>(m);
    return std::min(out, qm);
  };
  int x = 0, y = 0;
  unsigned steps = 0;
  for (;;) {
    int nx = fmap(x, y), ny = gmap(x, y);
    if (nx == x && ny == y) return steps;
    x = nx;
    y = ny;
    ++steps;
  }
}

}  // namespace muipc
