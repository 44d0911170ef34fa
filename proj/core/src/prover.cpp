#include "muipc/prover.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <unordered_map>

namespace muipc {

namespace {

// Sorted, duplicate-free context.  T is never stored, /\ is expanded on
// insertion and F sets a flag, so a context never contains T, F or /\ nodes.
struct Ctx {
  std::vector<Formula> fs;
  bool has_bot = false;

  void insert(const Formula& f) {
    switch (f.kind()) {
      case Kind::Top:
        return;
      case Kind::Bot:
        has_bot = true;
        return;
      case Kind::And:
        for (const Formula& k : f.children()) insert(k);
        return;
      default: {
        auto it = std::lower_bound(fs.begin(), fs.end(), f);
        if (it == fs.end() || !(*it == f)) fs.insert(it, f);
        return;
      }
    }
  }

  bool contains(const Formula& f) const {
    return std::binary_search(fs.begin(), fs.end(), f);
  }

  void erase_at(std::size_t i) { fs.erase(fs.begin() + static_cast<long>(i)); }
};

struct SequentKey {
  std::vector<Formula> fs;
  Formula goal;

  bool operator==(const SequentKey& o) const {
    if (!(goal == o.goal) || fs.size() != o.fs.size()) return false;
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (!(fs[i] == o.fs[i])) return false;
    return true;
  }
};

struct SequentKeyHash {
  std::size_t operator()(const SequentKey& k) const {
    std::size_t h = k.goal.hash();
    for (const Formula& f : k.fs) h ^= f.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::size_t memo_cap_from_env() {
  if (const char* v = std::getenv("MUIPC_PROVER_MEMO_MAX")) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  return 2u << 20;  // ~2M entries; roughly a gigabyte of keys
}

}  // namespace

struct Prover::Impl {
  std::unordered_map<SequentKey, bool, SequentKeyHash> memo;
  std::size_t memo_cap = memo_cap_from_env();
  mutable std::mutex mutex;

  bool memo_lookup(const SequentKey& key, bool& out) const {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(key);
    if (it == memo.end()) return false;
    out = it->second;
    return true;
  }

  void memo_store(SequentKey key, bool value) {
    std::lock_guard<std::mutex> lock(mutex);
    if (memo.size() >= memo_cap) memo.clear();
    memo.emplace(std::move(key), value);
  }

  bool derive(Ctx ctx, Formula goal, ProofStats& stats, std::uint32_t depth);
};

bool Prover::Impl::derive(Ctx ctx, Formula goal, ProofStats& stats,
                          std::uint32_t depth) {
  ++stats.nodes;
  stats.max_depth = std::max(stats.max_depth, depth);

  // Axioms and invertible left rules, saturated to a fixed point.
  for (bool changed = true; changed;) {
    if (ctx.has_bot || goal.is(Kind::Top) || ctx.contains(goal)) return true;
    changed = false;
    for (std::size_t i = 0; i < ctx.fs.size(); ++i) {
      const Formula f = ctx.fs[i];
      if (!f.is(Kind::Imp)) continue;
      const Formula& a = f.antecedent();
      const Formula& b = f.consequent();
      if (ctx.contains(b)) {  // subsumed: b already gives everything a -> b does
        ctx.erase_at(i);
        changed = true;
        break;
      }
      if (a.is(Kind::Var) && ctx.contains(a)) {
        ctx.erase_at(i);
        ctx.insert(b);
        changed = true;
        break;
      }
      if (a.is(Kind::And)) {  // curry: (c0 /\ rest) -> b  ~>  c0 -> (rest -> b)
        const auto& cs = a.children();
        std::vector<Formula> rest(cs.begin() + 1, cs.end());
        Formula curried = Formula::imp(cs[0], Formula::imp(Formula::conj(std::move(rest)), b));
        ctx.erase_at(i);
        ctx.insert(curried);
        changed = true;
        break;
      }
      if (a.is(Kind::Or)) {  // (c0 \/ ... \/ ck) -> b  ~>  {ci -> b}
        std::vector<Formula> parts;
        parts.reserve(a.children().size());
        for (const Formula& c : a.children()) parts.push_back(Formula::imp(c, b));
        ctx.erase_at(i);
        for (Formula& p : parts) ctx.insert(p);
        changed = true;
        break;
      }
    }
  }

  // Invertible right rules.
  if (goal.is(Kind::And)) {
    for (const Formula& c : goal.children())
      if (!derive(ctx, c, stats, depth + 1)) return false;
    return true;
  }
  if (goal.is(Kind::Imp)) {
    ctx.insert(goal.antecedent());
    return derive(std::move(ctx), goal.consequent(), stats, depth + 1);
  }

  // Invertible left disjunction: all branches must close.
  for (std::size_t i = 0; i < ctx.fs.size(); ++i) {
    if (!ctx.fs[i].is(Kind::Or)) continue;
    Formula f = ctx.fs[i];
    ctx.erase_at(i);
    for (const Formula& c : f.children()) {
      Ctx branch = ctx;
      branch.insert(c);
      if (!derive(std::move(branch), goal, stats, depth + 1)) return false;
    }
    return true;
  }

  // Saturated: the remaining choices need backtracking; memoize here.
  SequentKey key{ctx.fs, goal};
  bool cached = false;
  if (memo_lookup(key, cached)) return cached;

  bool result = false;
  if (goal.is(Kind::Or)) {
    for (const Formula& c : goal.children()) {
      if (derive(ctx, c, stats, depth + 1)) {
        result = true;
        break;
      }
    }
  }
  if (!result) {
    // Left rule for ((a -> b) -> c): prove a -> b with b -> c available,
    // then continue with c.  The continuation premise is tried first: it is
    // usually the smaller search, and when it fails the candidate is dead.
    for (std::size_t i = 0; i < ctx.fs.size() && !result; ++i) {
      const Formula& f = ctx.fs[i];
      if (!f.is(Kind::Imp) || !f.antecedent().is(Kind::Imp)) continue;
      const Formula& ab = f.antecedent();
      const Formula& c = f.consequent();
      Ctx right = ctx;
      right.erase_at(i);
      right.insert(c);
      if (!derive(std::move(right), goal, stats, depth + 1)) continue;
      Ctx left = ctx;
      left.erase_at(i);
      left.insert(Formula::imp(ab.consequent(), c));
      left.insert(ab.antecedent());
      if (derive(std::move(left), ab.consequent(), stats, depth + 1)) result = true;
    }
  }

  memo_store(std::move(key), result);
  return result;
}

Prover::Prover() : impl_(std::make_unique<Impl>()) {}
Prover::~Prover() = default;

ProofOutcome Prover::prove(const Sequent& s) {
  for (const Formula& f : s.context)
    if (!f.fixed_point_free())
      throw DomainError("prover input contains a fixed-point binder: " + f.to_string());
  if (!s.goal.fixed_point_free())
    throw DomainError("prover input contains a fixed-point binder: " + s.goal.to_string());

  Ctx ctx;
  for (const Formula& f : s.context) ctx.insert(f);
  ProofOutcome outcome;
  outcome.derivable = impl_->derive(std::move(ctx), s.goal, outcome.stats, 0);
  return outcome;
}

bool Prover::proves(const std::vector<Formula>& context, const Formula& goal) {
  return prove(Sequent{context, goal}).derivable;
}

bool Prover::equiv(const Formula& f, const Formula& g) {
  if (f == g) return true;
  return proves({f}, g) && proves({g}, f);
}

std::size_t Prover::memo_size() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->memo.size();
}

void Prover::clear_memo() {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->memo.clear();
}

Prover& Prover::global() {
  static Prover instance;
  return instance;
}

}  // namespace muipc
