#include "muipc/normalize.hpp"

#include <algorithm>

namespace muipc {

bool is_disjunctive(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == x;
    case Kind::Imp:
      return !f.antecedent().has_free(x) && is_disjunctive(f.consequent(), x);
    case Kind::Or: {
      bool has_x_child = false;
      for (const Formula& c : f.children()) {
        if (!c.has_free(x)) continue;  // side disjunct
        has_x_child = true;
        if (!is_disjunctive(c, x)) return false;
      }
      return has_x_child;
    }
    default:
      return false;
  }
}

DisjunctiveFormula::DisjunctiveFormula(Formula f, std::string x)
    : formula_(std::move(f)), var_(std::move(x)) {
  if (!is_disjunctive(formula_, var_))
    throw DomainError("formula is not disjunctive in '" + var_ + "': " + formula_.to_string());
}

// ---------------------------------------------------------------------------
// split
// ---------------------------------------------------------------------------

namespace {

Formula rename_weak(const Formula& f, const std::string& x, const Formula& y,
                    bool under_antecedent) {
  if (!f.has_free(x)) return f;
  switch (f.kind()) {
    case Kind::Var:
      return under_antecedent ? y : f;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const Formula& k : f.children())
        kids.push_back(rename_weak(k, x, y, under_antecedent));
      return f.is(Kind::And) ? Formula::conj(std::move(kids))
                             : Formula::disj(std::move(kids));
    }
    case Kind::Imp:
      return Formula::imp(rename_weak(f.antecedent(), x, y, true),
                          rename_weak(f.consequent(), x, y, under_antecedent));
    case Kind::Mu:
    case Kind::Nu: {
      // x free in f and distinct from the binder (bound names are renamed
      // apart on ingest); binders do not affect implication nesting.
      Formula body = rename_weak(f.body(), x, y, under_antecedent);
      return f.is(Kind::Mu) ? Formula::mu(f.name(), std::move(body))
                            : Formula::nu(f.name(), std::move(body));
    }
    default:
      return f;
  }
}

}  // namespace

SplitResult split(const Formula& f, const std::string& x) {
  if (!positive_in(f, x))
    throw PositivityError("split: '" + x + "' is not positive in " + f.to_string());
  SplitResult r;
  r.spos_var = x;
  std::set<std::string> avoid(f.free_vars().begin(), f.free_vars().end());
  avoid.insert(x);
  r.wneg_var = fresh_var("y", avoid);
  r.renamed = rename_weak(f, x, Formula::var(r.wneg_var), false);
  r.has_weakly_negative = r.renamed.has_free(r.wneg_var);
  return r;
}

// ---------------------------------------------------------------------------
// Normal form: tr / c tables
// ---------------------------------------------------------------------------

namespace {

struct TrC {
  std::vector<Formula> tr;  // disjunctive in x
  Formula c;                // x-free
};

void sort_unique(std::vector<Formula>& fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

// Entries that canonicalize to T (a c(.) part collapsed a disjunct, or an
// antecedent was F) are vacuous conjuncts; everything else stays disjunctive.
void drop_top(std::vector<Formula>& fs) {
  fs.erase(std::remove_if(fs.begin(), fs.end(),
                          [](const Formula& f) { return f.is(Kind::Top); }),
           fs.end());
}

TrC trc(const Formula& f, const std::string& x) {
  if (!f.has_free(x)) return {{}, f};
  switch (f.kind()) {
    case Kind::Var:
      return {{f}, Formula::top()};  // f == x
    case Kind::Imp: {
      TrC inner = trc(f.consequent(), x);
      TrC out{{}, Formula::imp(f.antecedent(), inner.c)};
      out.tr.reserve(inner.tr.size());
      for (const Formula& d : inner.tr) out.tr.push_back(Formula::imp(f.antecedent(), d));
      return out;
    }
    case Kind::And: {
      TrC out{{}, Formula::top()};
      std::vector<Formula> cparts;
      for (const Formula& k : f.children()) {
        TrC part = trc(k, x);
        out.tr.insert(out.tr.end(), part.tr.begin(), part.tr.end());
        cparts.push_back(part.c);
      }
      out.c = Formula::conj(std::move(cparts));
      sort_unique(out.tr);
      return out;
    }
    case Kind::Or: {
      // Left fold of the binary table over the canonical child order; the
      // two-argument case with both sides containing x takes the full
      // three-way union.
      const auto& kids = f.children();
      TrC acc = trc(kids[0], x);
      for (std::size_t i = 1; i < kids.size(); ++i) {
        TrC rhs = trc(kids[i], x);
        std::vector<Formula> merged;
        for (const Formula& d : rhs.tr) merged.push_back(Formula::disj({acc.c, d}));
        for (const Formula& d : acc.tr) merged.push_back(Formula::disj({rhs.c, d}));
        for (const Formula& d1 : acc.tr)
          for (const Formula& d2 : rhs.tr) merged.push_back(Formula::disj({d1, d2}));
        acc.tr = std::move(merged);
        acc.c = Formula::disj({acc.c, rhs.c});
      }
      sort_unique(acc.tr);
      return acc;
    }
    default:
      throw DomainError("to_normal_form: unsupported node " +
                        std::string(kind_name(f.kind())) + " in " + f.to_string());
  }
}

}  // namespace

NormalForm to_normal_form(const Formula& f, const std::string& x) {
  if (!f.has_free(x))
    throw DomainError("to_normal_form: '" + x + "' does not occur in " + f.to_string());
  if (!strongly_positive_in(f, x))
    throw DomainError("to_normal_form: '" + x + "' is not strongly positive in " +
                      f.to_string());
  TrC t = trc(f, x);
  drop_top(t.tr);
  return NormalForm{t.c, std::move(t.tr)};
}

// ---------------------------------------------------------------------------
// Head / Side
// ---------------------------------------------------------------------------

namespace {

void collect_head_side(const Formula& f, const std::string& x,
                       std::vector<Formula>& head, std::vector<Formula>& side) {
  switch (f.kind()) {
    case Kind::Var:
      return;
    case Kind::Imp:
      head.push_back(f.antecedent());
      collect_head_side(f.consequent(), x, head, side);
      return;
    case Kind::Or: {
      for (const Formula& c : f.children()) {
        if (c.has_free(x))
          collect_head_side(c, x, head, side);
        else
          side.push_back(c);
      }
      return;
    }
    default:
      return;
  }
}

}  // namespace

HeadSide head_side(const DisjunctiveFormula& d) {
  HeadSide hs;
  collect_head_side(d.formula(), d.var(), hs.head, hs.side);
  sort_unique(hs.head);
  sort_unique(hs.side);
  return hs;
}

}  // namespace muipc
