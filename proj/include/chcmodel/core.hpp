#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chcmodel/formula.hpp"

namespace chc {

using Predicate = std::string;
using ClauseId = int;

/// Predicate symbol -> arity.
using Signature = std::map<Predicate, std::size_t>;

/// Finite integer window [lo, hi] used to restrict the universe for
/// brute-force checks.
struct Window {
  long long lo = 0;
  long long hi = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

/// First-order atom in abstracted form: every argument is a variable.
struct FOAtom {
  Predicate predicate;
  std::vector<Var> args;

  friend bool operator==(const FOAtom&, const FOAtom&) = default;
};

struct Literal {
  bool positive = true;
  FOAtom atom;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Substitution on variables. Unifiers only ever bind variables to
/// variables; numeric bindings are legal in the arithmetic constraint only.
class Substitution {
 public:
  using Image = std::variant<Var, Rational>;

  Substitution() = default;
  explicit Substitution(std::map<Var, Image> m) : map_(std::move(m)) {}
  static Substitution renaming(const std::map<Var, Var>& r);

  const std::map<Var, Image>& mapping() const { return map_; }
  bool empty() const { return map_.empty(); }
  void bind(const Var& v, Image img);
  bool is_idempotent() const;

  Var apply_var(const Var& v) const;  // throws on numeric binding
  LinTerm apply(const LinTerm& t) const;
  Formula apply(const Formula& f) const;
  FOAtom apply(const FOAtom& a) const;
  Literal apply(const Literal& l) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Var, Image> map_;
};

struct Provenance {
  enum class Kind { Input, Resolvent };
  Kind kind = Kind::Input;
  ClauseId left = 0, right = 0;  // parents
  std::size_t left_literal = 0, right_literal = 0;  // resolved literal positions
  Substitution unifier;
};

/// Constrained Horn clause  Lambda || C. The constraint is a multiset of
/// linear atoms; an element may also be the constant false (a ground atom
/// that folded), never true.
struct Clause {
  ClauseId id = 0;
  std::vector<Formula> constraint;
  std::vector<Literal> literals;
  Provenance provenance;

  Formula constraint_formula() const { return Formula::conj(constraint); }
  bool fo_empty() const { return literals.empty(); }
  std::optional<std::size_t> positive_index() const;
  std::size_t positive_count() const;
  bool is_horn() const { return positive_count() <= 1; }
  std::set<Var> vars() const;
  std::set<Var> fo_vars() const;
};

std::string clause_name(ClauseId id);

/// Apply a substitution to a whole clause. Rejects numeric bindings of
/// first-order arguments.
Clause apply_substitution(const Clause& c, const Substitution& s);

/// Rename every variable of c that occurs in `avoid` to a fresh name.
/// `renaming` receives fresh -> original.
Clause rename_apart(const Clause& c, const std::set<Var>& avoid, std::map<Var, Var>& renaming);

/// Strict total order on predicate symbols.
class Precedence {
 public:
  Precedence() = default;
  explicit Precedence(const std::vector<Predicate>& ascending);

  bool contains(const Predicate& p) const { return rank_.count(p) != 0; }
  std::size_t rank(const Predicate& p) const;
  std::vector<Predicate> ascending() const;
  bool less(const Predicate& a, const Predicate& b) const { return rank(a) < rank(b); }

 private:
  std::map<Predicate, std::size_t> rank_;
};

enum class Comparison { Less, Greater, Equal, Incomparable };

/// Literal order: by predicate rank, then positive below negative. Literals
/// with the same predicate and sign but different arguments are
/// incomparable at the non-ground level.
Comparison compare_literals(const Literal& a, const Literal& b, const Precedence& ord);

struct MaximalLiteral {
  std::size_t index;
  bool strict;
};

std::vector<MaximalLiteral> maximal_literals(const Clause& c, const Precedence& ord);

/// Most general unifier over variable-only argument tuples. Variables of
/// `b` are preferred as class representatives.
std::optional<Substitution> unify_atoms(const FOAtom& a, const FOAtom& b);

}  // namespace chc
