// Formula trees for intuitionistic propositional logic with least/greatest
// fixed-point binders (mu/nu over positive variables).
//
// Formulas are immutable values.  Every constructor canonicalizes:
//   - /\ and \/ are n-ary, flattened, deduplicated and sorted under a fixed
//     structural order, so structural equality is decidable and stable;
//   - unit/absorption rewrites run eagerly: F is dropped from \/ and T from
//     /\; a \/ containing T collapses to T and a /\ containing F to F;
//     a -> T becomes T, T -> a becomes a, F -> a becomes T.
// No other simplification happens implicitly; deeper, prover-guided
// simplification is an explicit pass (see simplify.hpp).

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace muipc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Concrete-syntax error, with a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A mu/nu binder was applied to a variable that is not positive in the body.
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. the prover on a formula
/// that still contains fixed-point binders).
class DomainError : public Error {
 public:
  using Error::Error;
};

enum class Kind : std::uint8_t { Var, Top, Bot, And, Or, Imp, Mu, Nu };

class Formula {
 public:
  Formula();  // T

  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula imp(Formula antecedent, Formula consequent);
  static Formula mu(const std::string& var, Formula body);  // throws PositivityError
  static Formula nu(const std::string& var, Formula body);  // throws PositivityError

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  const std::string& name() const;               // Var, Mu, Nu
  const std::vector<Formula>& children() const;  // And, Or
  const Formula& antecedent() const;             // Imp
  const Formula& consequent() const;             // Imp
  const Formula& body() const;                   // Mu, Nu

  std::size_t hash() const;
  /// Node count of the canonical tree (one node per n-ary connective).
  std::uint32_t size() const;
  /// Number of implication nodes plus variable occurrences.
  std::uint32_t imp_var_count() const;
  bool fixed_point_free() const;
  const std::vector<std::string>& free_vars() const;  // sorted, unique
  bool has_free(const std::string& v) const;

  /// Total structural order; the order used to sort /\ and \/ children.
  int compare(const Formula& other) const;
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const { return compare(other) < 0; }

  std::string to_string() const;

  struct Node;
  const Node* raw() const { return node_.get(); }

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Occurrence polarity
// ---------------------------------------------------------------------------

enum class Sign : std::uint8_t { Positive, Negative };
enum class Strength : std::uint8_t { StronglyPositive, WeaklyNegative };

struct Occurrence {
  std::vector<int> path;  // child indices from the root
  Sign sign;              // parity of implication-antecedent crossings
  Strength strength;      // weakly negative iff some ancestor antecedent
};

struct PolarityReport {
  std::string variable;
  std::vector<Occurrence> occurrences;
};

enum class VarClass : std::uint8_t {
  Absent,
  StronglyPositive,
  WeaklyNegative,  // every occurrence positive, none strongly positive
  MixedPositive,   // every occurrence positive, both strengths present
  NonPositive,     // at least one negative occurrence
};

PolarityReport polarity(const Formula& f, const std::string& x);
VarClass classify(const Formula& f, const std::string& x);
bool positive_in(const Formula& f, const std::string& x);
bool negative_in(const Formula& f, const std::string& x);
bool strongly_positive_in(const Formula& f, const std::string& x);
bool weakly_negative_in(const Formula& f, const std::string& x);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Capture-avoiding substitution of g for the free occurrences of x.
Formula substitute(const Formula& f, const std::string& x, const Formula& g);

/// n-fold composition f(f(...f(base)...)); iterate(f, x, 0, base) == base.
Formula iterate(const Formula& f, const std::string& x, unsigned n,
                const Formula& base);

/// Smallest name of the shape base or base<k> not contained in avoid.
std::string fresh_var(const std::string& base, const std::set<std::string>& avoid);

/// Parse the concrete syntax.  Bound variables are renamed apart from each
/// other and from the free variables on ingest.
Formula parse(std::string_view text);

inline std::string print(const Formula& f) { return f.to_string(); }

const char* kind_name(Kind k);
const char* var_class_name(VarClass c);

}  // namespace muipc
