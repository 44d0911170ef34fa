#include "muipc/heyting.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace muipc {

FinitePoset FinitePoset::discrete(int n) {
  FinitePoset p;
  p.n = n;
  p.leq.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) p.set(i, i);
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  FinitePoset p = discrete(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.set(i, j);
  return p;
}

void FinitePoset::validate() const {
  if (n <= 0) throw DomainError("poset must be non-empty");
  if (leq.size() != static_cast<std::size_t>(n) * n)
    throw DomainError("poset relation has the wrong size");
  for (int i = 0; i < n; ++i)
    if (!le(i, i)) throw DomainError("poset relation is not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && le(i, j) && le(j, i))
        throw DomainError("poset relation is not antisymmetric");
      if (!le(i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (le(j, k) && !le(i, k)) throw DomainError("poset relation is not transitive");
    }
}

FinitePoset FinitePoset::parse(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n <= 0 || n > 62) throw DomainError("poset: bad element count");
  FinitePoset p = discrete(n);
  std::string a;
  while (in >> a) {
    int i = -1, j = -1;
    auto lt = a.find('<');
    if (lt != std::string::npos) {
      i = std::stoi(a.substr(0, lt));
      j = std::stoi(a.substr(lt + 1));
    } else {
      i = std::stoi(a);
      if (!(in >> j)) throw DomainError("poset: dangling pair");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("poset: pair out of range");
    p.set(i, j);
  }
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (p.le(i, k))
        for (int j = 0; j < n; ++j)
          if (p.le(k, j)) p.set(i, j);
  p.validate();
  return p;
}

std::string FinitePoset::to_text() const {
  std::ostringstream out;
  out << n << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le(i, j)) out << i << '<' << j << '\n';
  return out.str();
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::upset_algebra(const FinitePoset& p) {
  p.validate();
  if (p.n > 62) throw DomainError("poset too large for upset algebra");
  std::vector<std::uint64_t> upsets;
  const std::uint64_t full = (p.n == 62) ? ~0ULL : ((1ULL << p.n) - 1);
  for (std::uint64_t m = 0; m <= full; ++m) {
    bool ok = true;
    for (int i = 0; ok && i < p.n; ++i) {
      if (!(m >> i & 1)) continue;
      for (int j = 0; j < p.n; ++j)
        if (p.le(i, j) && !(m >> j & 1)) {
          ok = false;
          break;
        }
    }
    if (ok) upsets.push_back(m);
    if (m == full) break;
  }
  std::sort(upsets.begin(), upsets.end());
  if (upsets.size() > 255) throw DomainError("upset algebra carrier too large");

  FiniteHeytingAlgebra h;
  h.n_ = static_cast<int>(upsets.size());
  h.masks_ = upsets;
  h.poset_ = p;
  auto index_of = [&](std::uint64_t m) {
    return static_cast<int>(std::lower_bound(upsets.begin(), upsets.end(), m) - upsets.begin());
  };
  h.bot_ = index_of(0);
  h.top_ = index_of(full);
  const int n = h.n_;
  h.meet_.resize(static_cast<std::size_t>(n) * n);
  h.join_.resize(static_cast<std::size_t>(n) * n);
  h.imp_.resize(static_cast<std::size_t>(n) * n);
  h.leq_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::uint64_t ma = upsets[a], mb = upsets[b];
      h.meet_[h.idx(a, b)] = static_cast<std::uint8_t>(index_of(ma & mb));
      h.join_[h.idx(a, b)] = static_cast<std::uint8_t>(index_of(ma | mb));
      h.leq_[h.idx(a, b)] = (ma & ~mb) == 0 ? 1 : 0;
      // largest upset contained in ~ma | mb
      std::uint64_t w = (~ma | mb) & full;
      std::uint64_t r = 0;
      for (int i = 0; i < p.n; ++i) {
        bool in = true;
        for (int j = 0; in && j < p.n; ++j)
          if (p.le(i, j) && !(w >> j & 1)) in = false;
        if (in) r |= 1ULL << i;
      }
      h.imp_[h.idx(a, b)] = static_cast<std::uint8_t>(index_of(r));
    }
  h.check_laws();
  return h;
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::chain(int k) {
  if (k < 1) throw DomainError("chain algebra needs at least one element");
  if (k > 255) throw DomainError("chain algebra too large");
  FiniteHeytingAlgebra h;
  h.n_ = k;
  h.bot_ = 0;
  h.top_ = k - 1;
  h.meet_.resize(static_cast<std::size_t>(k) * k);
  h.join_.resize(static_cast<std::size_t>(k) * k);
  h.imp_.resize(static_cast<std::size_t>(k) * k);
  h.leq_.resize(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      h.meet_[h.idx(a, b)] = static_cast<std::uint8_t>(std::min(a, b));
      h.join_[h.idx(a, b)] = static_cast<std::uint8_t>(std::max(a, b));
      h.imp_[h.idx(a, b)] = static_cast<std::uint8_t>(a <= b ? k - 1 : b);
      h.leq_[h.idx(a, b)] = a <= b ? 1 : 0;
    }
  h.check_laws();
  return h;
}

void FiniteHeytingAlgebra::check_laws() const {
  const int n = n_;
  auto fail = [](const char* what) { throw DomainError(std::string("Heyting law failed: ") + what); };
  for (int x = 0; x < n; ++x) {
    if (!le(bot_, x) || !le(x, top_)) fail("bounds");
    if (imp(x, x) != top_) fail("x -> x = T");
    for (int y = 0; y < n; ++y) {
      if (meet(x, imp(x, y)) != meet(x, y)) fail("x /\\ (x -> y) = x /\\ y");
      if (meet(x, imp(y, x)) != x) fail("x /\\ (y -> x) = x");
      if (le(x, y) != (join(x, y) == y)) fail("order agrees with join");
      // residuation: z <= x -> y iff z /\ x <= y
      for (int z = 0; z < n; ++z) {
        if (le(z, imp(x, y)) != le(meet(z, x), y)) fail("residuation");
        if (imp(x, meet(y, z)) != meet(imp(x, y), imp(x, z)))
          fail("x -> (y /\\ z) = (x -> y) /\\ (x -> z)");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

int eval_rec(const Formula& f, const FiniteHeytingAlgebra& h, Valuation& v) {
  switch (f.kind()) {
    case Kind::Var: {
      auto it = v.find(f.name());
      if (it == v.end()) throw DomainError("eval: unbound variable '" + f.name() + "'");
      return it->second;
    }
    case Kind::Top:
      return h.top();
    case Kind::Bot:
      return h.bot();
    case Kind::And: {
      int acc = h.top();
      for (const Formula& k : f.children()) acc = h.meet(acc, eval_rec(k, h, v));
      return acc;
    }
    case Kind::Or: {
      int acc = h.bot();
      for (const Formula& k : f.children()) acc = h.join(acc, eval_rec(k, h, v));
      return acc;
    }
    case Kind::Imp: {
      int a = eval_rec(f.antecedent(), h, v);
      int b = eval_rec(f.consequent(), h, v);
      return h.imp(a, b);
    }
    case Kind::Mu:
    case Kind::Nu: {
      const std::string& x = f.name();
      auto saved = v.find(x);
      int saved_val = saved == v.end() ? -1 : saved->second;
      int cur = f.is(Kind::Mu) ? h.bot() : h.top();
      for (;;) {
        v[x] = cur;
        int next = eval_rec(f.body(), h, v);
        if (next == cur) break;
        cur = next;
      }
      if (saved_val >= 0) v[x] = saved_val;
      else v.erase(x);
      return cur;
    }
  }
  throw DomainError("eval: unreachable");
}

}  // namespace

int eval(const Formula& f, const FiniteHeytingAlgebra& h, const Valuation& v) {
  Valuation scratch = v;
  return eval_rec(f, h, scratch);
}

IterResult lfp_iterate(const Formula& f, const std::string& x,
                       const FiniteHeytingAlgebra& h, const Valuation& v) {
  if (!positive_in(f, x)) throw DomainError("lfp_iterate: '" + x + "' is not positive");
  Valuation scratch = v;
  int cur = h.bot();
  int steps = 0;
  for (;;) {
    scratch[x] = cur;
    int next = eval_rec(f, h, scratch);
    if (next == cur) return {cur, steps};
    cur = next;
    ++steps;
  }
}

IterResult gfp_iterate(const Formula& f, const std::string& x,
                       const FiniteHeytingAlgebra& h, const Valuation& v) {
  if (!positive_in(f, x)) throw DomainError("gfp_iterate: '" + x + "' is not positive");
  Valuation scratch = v;
  int cur = h.top();
  int steps = 0;
  for (;;) {
    scratch[x] = cur;
    int next = eval_rec(f, h, scratch);
    if (next == cur) return {cur, steps};
    cur = next;
    ++steps;
  }
}

// ---------------------------------------------------------------------------
// Poset enumeration (canonical representatives, isomorphism rejected by
// permutation-minimal relation encoding; intended for n <= 5)
// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> relation_bits_all_perms(const FinitePoset& p) {
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> encodings;
  do {
    std::uint64_t bits = 0;
    int pos = 0;
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j, ++pos)
        if (p.le(perm[i], perm[j])) bits |= 1ULL << pos;
    encodings.push_back(bits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return encodings;
}

}  // namespace

std::vector<FinitePoset> enumerate_posets(int max_n) {
  if (max_n > 6) throw DomainError("poset enumeration limited to n <= 6");
  std::vector<FinitePoset> result;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::uint64_t> seen;
    const std::uint64_t subsets = 1ULL << pairs.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
      // Edges only go from smaller to larger index, so every poset shows up
      // via one of its linear extensions.
      FinitePoset p = FinitePoset::discrete(n);
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if (s >> e & 1) p.set(pairs[e].first, pairs[e].second);
      bool transitive = true;
      for (int i = 0; transitive && i < n; ++i)
        for (int j = 0; transitive && j < n; ++j) {
          if (!p.le(i, j)) continue;
          for (int k = 0; k < n; ++k)
            if (p.le(j, k) && !p.le(i, k)) {
              transitive = false;
              break;
            }
        }
      if (!transitive) continue;
      auto encodings = relation_bits_all_perms(p);
      std::uint64_t canon = *std::min_element(encodings.begin(), encodings.end());
      if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
      seen.push_back(canon);
      result.push_back(std::move(p));
    }
  }
  return result;
}

std::vector<FiniteHeytingAlgebra> small_algebras(int max_poset_elements, int max_carrier) {
  std::vector<FiniteHeytingAlgebra> out;
  for (const FinitePoset& p : enumerate_posets(max_poset_elements)) {
    FiniteHeytingAlgebra h = FiniteHeytingAlgebra::upset_algebra(p);
    if (h.size() <= max_carrier) out.push_back(std::move(h));
  }
  return out;
}

std::optional<RefutationWitness> refute_equiv(const Formula& f, const Formula& g,
                                              int max_poset) {
  std::vector<std::string> vars = f.free_vars();
  for (const std::string& v : g.free_vars())
    if (!std::binary_search(vars.begin(), vars.end(), v)) {
      vars.push_back(v);
      std::sort(vars.begin(), vars.end());
    }
  for (const FinitePoset& p : enumerate_posets(max_poset)) {
    FiniteHeytingAlgebra h = FiniteHeytingAlgebra::upset_algebra(p);
    const std::size_t k = vars.size();
    std::vector<int> assign(k, 0);
    for (;;) {
      Valuation v;
      for (std::size_t i = 0; i < k; ++i) v[vars[i]] = assign[i];
      int a = eval(f, h, v);
      int b = eval(g, h, v);
      if (a != b) return RefutationWitness{p, v, a, b};
      std::size_t i = 0;
      for (; i < k; ++i) {
        if (++assign[i] < h.size()) break;
        assign[i] = 0;
      }
      if (i == k) break;
      if (k == 0) break;
    }
  }
  return std::nullopt;
}

KnModel kn_model(int n) {
  if (n < 0 || n > 5) throw DomainError("kn_model: n out of range");
  const int worlds = 1 << n;
  FinitePoset p = FinitePoset::discrete(worlds);
  for (int s = 0; s < worlds; ++s)
    for (int t = 0; t < worlds; ++t)
      if ((t & ~s) == 0) p.set(s, t);  // s <= t iff t is a subset of s
  KnModel m{p, FiniteHeytingAlgebra::upset_algebra(p), {}};

  auto upset_index = [&](std::uint64_t mask) {
    for (int e = 0; e < m.algebra.size(); ++e)
      if (m.algebra.upset_mask(e) == mask) return e;
    throw DomainError("kn_model: not an upset");
  };
  for (int i = 1; i <= n; ++i) {
    std::uint64_t mask = 0;
    for (int s = 0; s < worlds; ++s)
      if (!(s >> (i - 1) & 1)) mask |= 1ULL << s;  // a_i holds at s iff i not in s
    m.valuation["a" + std::to_string(i)] = upset_index(mask);
  }
  m.valuation["b"] = upset_index(1ULL << 0);  // b holds exactly at the empty set
  return m;
}

}  // namespace muipc
