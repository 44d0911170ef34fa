#include "muipc/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace muipc {

struct Formula::Node {
  Kind kind = Kind::Top;
  std::string name;            // Var, Mu, Nu
  std::vector<Formula> kids;   // And/Or: >= 2; Imp: 2; Mu/Nu: 1
  std::size_t hash = 0;
  std::uint32_t nodes = 1;
  std::uint32_t imp_vars = 0;
  bool has_binder = false;
  std::vector<std::string> free;  // sorted, unique
};

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::shared_ptr<const Formula::Node> finalize(Formula::Node n) {
  std::size_t h = hash_mix(0x9e1f, static_cast<std::size_t>(n.kind));
  h = hash_mix(h, std::hash<std::string>{}(n.name));
  std::uint32_t nodes = 1;
  std::uint32_t iv = n.kind == Kind::Imp ? 1u : 0u;
  bool binder = n.kind == Kind::Mu || n.kind == Kind::Nu;
  std::vector<std::string> free;
  if (n.kind == Kind::Var) {
    iv = 1;
    free.push_back(n.name);
  }
  for (const Formula& k : n.kids) {
    h = hash_mix(h, k.hash());
    nodes += k.size();
    iv += k.imp_var_count();
    binder = binder || !k.fixed_point_free();
    free = merge_sorted(free, k.free_vars());
  }
  if (n.kind == Kind::Mu || n.kind == Kind::Nu) {
    free.erase(std::remove(free.begin(), free.end(), n.name), free.end());
  }
  n.hash = h;
  n.nodes = nodes;
  n.imp_vars = iv;
  n.has_binder = binder;
  n.free = std::move(free);
  return std::make_shared<const Formula::Node>(std::move(n));
}

const std::shared_ptr<const Formula::Node>& top_node() {
  static const std::shared_ptr<const Formula::Node> n = [] {
    Formula::Node t;
    t.kind = Kind::Top;
    return finalize(std::move(t));
  }();
  return n;
}

const std::shared_ptr<const Formula::Node>& bot_node() {
  static const std::shared_ptr<const Formula::Node> n = [] {
    Formula::Node b;
    b.kind = Kind::Bot;
    return finalize(std::move(b));
  }();
  return n;
}

const std::vector<Formula>& no_children() {
  static const std::vector<Formula> none;
  return none;
}

}  // namespace

Formula::Formula() : node_(top_node()) {}

Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }

const std::vector<Formula>& Formula::children() const {
  if (node_->kind == Kind::And || node_->kind == Kind::Or) return node_->kids;
  return no_children();
}

const Formula& Formula::antecedent() const {
  assert(node_->kind == Kind::Imp);
  return node_->kids[0];
}

const Formula& Formula::consequent() const {
  assert(node_->kind == Kind::Imp);
  return node_->kids[1];
}

const Formula& Formula::body() const {
  assert(node_->kind == Kind::Mu || node_->kind == Kind::Nu);
  return node_->kids[0];
}

std::size_t Formula::hash() const { return node_->hash; }
std::uint32_t Formula::size() const { return node_->nodes; }
std::uint32_t Formula::imp_var_count() const { return node_->imp_vars; }
bool Formula::fixed_point_free() const { return !node_->has_binder; }
const std::vector<std::string>& Formula::free_vars() const { return node_->free; }

bool Formula::has_free(const std::string& v) const {
  return std::binary_search(node_->free.begin(), node_->free.end(), v);
}

int Formula::compare(const Formula& o) const {
  if (node_ == o.node_) return 0;
  auto ka = static_cast<int>(kind()), kb = static_cast<int>(o.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
      return 0;
    case Kind::Var:
      return name().compare(o.name());
    case Kind::Imp: {
      int c = node_->kids[0].compare(o.node_->kids[0]);
      if (c != 0) return c;
      return node_->kids[1].compare(o.node_->kids[1]);
    }
    case Kind::And:
    case Kind::Or: {
      const auto& a = node_->kids;
      const auto& b = o.node_->kids;
      for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = a[i].compare(b[i]);
        if (c != 0) return c;
      }
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      return 0;
    }
    case Kind::Mu:
    case Kind::Nu: {
      int c = name().compare(o.name());
      if (c != 0) return c;
      return node_->kids[0].compare(o.node_->kids[0]);
    }
  }
  return 0;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(other) == 0;
}

Formula Formula::var(std::string name) {
  assert(!name.empty());
  Node n;
  n.kind = Kind::Var;
  n.name = std::move(name);
  return Formula(finalize(std::move(n)));
}

Formula Formula::top() { return Formula(top_node()); }
Formula Formula::bot() { return Formula(bot_node()); }

Formula Formula::conj(std::vector<Formula> cs) {
  std::vector<Formula> out;
  out.reserve(cs.size());
  for (Formula& c : cs) {
    if (c.is(Kind::And)) {
      const auto& kids = c.children();
      out.insert(out.end(), kids.begin(), kids.end());
    } else if (c.is(Kind::Top)) {
      continue;
    } else if (c.is(Kind::Bot)) {
      return bot();
    } else {
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) return top();
  if (out.size() == 1) return out[0];
  Node n;
  n.kind = Kind::And;
  n.kids = std::move(out);
  return Formula(finalize(std::move(n)));
}

Formula Formula::disj(std::vector<Formula> cs) {
  std::vector<Formula> out;
  out.reserve(cs.size());
  for (Formula& c : cs) {
    if (c.is(Kind::Or)) {
      const auto& kids = c.children();
      out.insert(out.end(), kids.begin(), kids.end());
    } else if (c.is(Kind::Bot)) {
      continue;
    } else if (c.is(Kind::Top)) {
      return top();
    } else {
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) return bot();
  if (out.size() == 1) return out[0];
  Node n;
  n.kind = Kind::Or;
  n.kids = std::move(out);
  return Formula(finalize(std::move(n)));
}

Formula Formula::imp(Formula a, Formula b) {
  if (b.is(Kind::Top)) return top();
  if (a.is(Kind::Top)) return b;
  if (a.is(Kind::Bot)) return top();
  Node n;
  n.kind = Kind::Imp;
  n.kids = {std::move(a), std::move(b)};
  return Formula(finalize(std::move(n)));
}

Formula Formula::mu(const std::string& var, Formula body) {
  if (!positive_in(body, var))
    throw PositivityError("variable '" + var + "' is not positive under mu");
  Node n;
  n.kind = Kind::Mu;
  n.name = var;
  n.kids = {std::move(body)};
  return Formula(finalize(std::move(n)));
}

Formula Formula::nu(const std::string& var, Formula body) {
  if (!positive_in(body, var))
    throw PositivityError("variable '" + var + "' is not positive under nu");
  Node n;
  n.kind = Kind::Nu;
  n.name = var;
  n.kids = {std::move(body)};
  return Formula(finalize(std::move(n)));
}

// ---------------------------------------------------------------------------
// Polarity
// ---------------------------------------------------------------------------

namespace {

void polarity_walk(const Formula& f, const std::string& x, std::vector<int>& path,
                   bool negated, bool under_antecedent,
                   std::vector<Occurrence>& out) {
  switch (f.kind()) {
    case Kind::Var:
      if (f.name() == x) {
        out.push_back({path, negated ? Sign::Negative : Sign::Positive,
                       under_antecedent ? Strength::WeaklyNegative
                                        : Strength::StronglyPositive});
      }
      return;
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::And:
    case Kind::Or: {
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (!kids[i].has_free(x)) continue;
        path.push_back(static_cast<int>(i));
        polarity_walk(kids[i], x, path, negated, under_antecedent, out);
        path.pop_back();
      }
      return;
    }
    case Kind::Imp: {
      if (f.antecedent().has_free(x)) {
        path.push_back(0);
        polarity_walk(f.antecedent(), x, path, !negated, true, out);
        path.pop_back();
      }
      if (f.consequent().has_free(x)) {
        path.push_back(1);
        polarity_walk(f.consequent(), x, path, negated, under_antecedent, out);
        path.pop_back();
      }
      return;
    }
    case Kind::Mu:
    case Kind::Nu: {
      if (f.name() == x || !f.body().has_free(x)) return;
      path.push_back(0);
      polarity_walk(f.body(), x, path, negated, under_antecedent, out);
      path.pop_back();
      return;
    }
  }
}

}  // namespace

PolarityReport polarity(const Formula& f, const std::string& x) {
  PolarityReport report;
  report.variable = x;
  std::vector<int> path;
  polarity_walk(f, x, path, false, false, report.occurrences);
  return report;
}

VarClass classify(const Formula& f, const std::string& x) {
  PolarityReport report = polarity(f, x);
  if (report.occurrences.empty()) return VarClass::Absent;
  bool any_negative = false, any_strong = false, any_weak = false;
  for (const Occurrence& o : report.occurrences) {
    if (o.sign == Sign::Negative) any_negative = true;
    if (o.strength == Strength::StronglyPositive) any_strong = true;
    else any_weak = true;
  }
  if (any_negative) return VarClass::NonPositive;
  if (any_strong && any_weak) return VarClass::MixedPositive;
  return any_strong ? VarClass::StronglyPositive : VarClass::WeaklyNegative;
}

bool positive_in(const Formula& f, const std::string& x) {
  VarClass c = classify(f, x);
  return c != VarClass::NonPositive;
}

bool negative_in(const Formula& f, const std::string& x) {
  PolarityReport report = polarity(f, x);
  for (const Occurrence& o : report.occurrences)
    if (o.sign == Sign::Positive) return false;
  return true;
}

bool strongly_positive_in(const Formula& f, const std::string& x) {
  VarClass c = classify(f, x);
  return c == VarClass::Absent || c == VarClass::StronglyPositive;
}

bool weakly_negative_in(const Formula& f, const std::string& x) {
  PolarityReport report = polarity(f, x);
  for (const Occurrence& o : report.occurrences)
    if (o.strength == Strength::StronglyPositive) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Substitution and iteration
// ---------------------------------------------------------------------------

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (unsigned k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

Formula substitute(const Formula& f, const std::string& x, const Formula& g) {
  if (!f.has_free(x)) return f;
  switch (f.kind()) {
    case Kind::Var:
      return g;  // f.name() == x here, since x is free in f
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children()) kids.push_back(substitute(k, x, g));
      return f.is(Kind::And) ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    }
    case Kind::Imp:
      return Formula::imp(substitute(f.antecedent(), x, g),
                          substitute(f.consequent(), x, g));
    case Kind::Mu:
    case Kind::Nu: {
      std::string binder = f.name();
      Formula body = f.body();
      if (g.has_free(binder)) {
        std::set<std::string> avoid(g.free_vars().begin(), g.free_vars().end());
        avoid.insert(body.free_vars().begin(), body.free_vars().end());
        avoid.insert(x);
        std::string renamed = fresh_var(binder, avoid);
        body = substitute(body, binder, Formula::var(renamed));
        binder = renamed;
      }
      body = substitute(body, x, g);
      return f.is(Kind::Mu) ? Formula::mu(binder, std::move(body))
                            : Formula::nu(binder, std::move(body));
    }
  }
  return f;
}

Formula iterate(const Formula& f, const std::string& x, unsigned n,
                const Formula& base) {
  Formula acc = base;
  for (unsigned i = 0; i < n; ++i) acc = substitute(f, x, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: -> is 1 (right-associative), \/ is 2, /\ is 3,
// atoms are 4.  mu/nu bind to the end of the enclosing scope, so they are
// parenthesized anywhere but at level 0, and their body is always wrapped.
void pp(const Formula& f, int ctx, std::string& out) {
  switch (f.kind()) {
    case Kind::Var:
      out += f.name();
      return;
    case Kind::Top:
      out += 'T';
      return;
    case Kind::Bot:
      out += 'F';
      return;
    case Kind::And: {
      bool wrap = ctx > 3;
      if (wrap) out += '(';
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i > 0) out += " /\\ ";
        pp(kids[i], 4, out);
      }
      if (wrap) out += ')';
      return;
    }
    case Kind::Or: {
      bool wrap = ctx > 2;
      if (wrap) out += '(';
      const auto& kids = f.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i > 0) out += " \\/ ";
        pp(kids[i], 3, out);
      }
      if (wrap) out += ')';
      return;
    }
    case Kind::Imp: {
      bool wrap = ctx > 1;
      if (wrap) out += '(';
      pp(f.antecedent(), 2, out);
      out += " -> ";
      pp(f.consequent(), 1, out);
      if (wrap) out += ')';
      return;
    }
    case Kind::Mu:
    case Kind::Nu: {
      bool wrap = ctx > 0;
      if (wrap) out += '(';
      out += f.is(Kind::Mu) ? "mu " : "nu ";
      out += f.name();
      out += ". ";
      Kind bk = f.body().kind();
      if (bk == Kind::Var || bk == Kind::Top || bk == Kind::Bot) {
        pp(f.body(), 0, out);
      } else {
        out += '(';
        pp(f.body(), 0, out);
        out += ')';
      }
      if (wrap) out += ')';
      return;
    }
  }
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  pp(*this, 0, out);
  return out;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::Top: return "top";
    case Kind::Bot: return "bot";
    case Kind::And: return "and";
    case Kind::Or: return "or";
    case Kind::Imp: return "imp";
    case Kind::Mu: return "mu";
    case Kind::Nu: return "nu";
  }
  return "?";
}

const char* var_class_name(VarClass c) {
  switch (c) {
    case VarClass::Absent: return "absent";
    case VarClass::StronglyPositive: return "strongly-positive";
    case VarClass::WeaklyNegative: return "weakly-negative";
    case VarClass::MixedPositive: return "mixed-positive";
    case VarClass::NonPositive: return "non-positive";
  }
  return "?";
}

}  // namespace muipc
