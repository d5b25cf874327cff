#pragma once

#include <memory>
#include <set>
#include <vector>

#include "chcmodel/arith.hpp"

namespace chc {

/// Relation of a normalized atom `term REL 0`. Div/NDiv mean `m | term` and
/// its negation; they only arise from integer quantifier elimination.
enum class Rel { Le, Lt, Eq, Ne, Div, NDiv };

/// Surface relations accepted by the atom constructor.
enum class RelOp { Le, Lt, Eq, Ne, Gt, Ge };

class Formula;

/// Linear arithmetic atom in normal form: integer, primitive coefficients;
/// equalities and disequalities have a positive leading coefficient;
/// divisibility atoms have coefficients and constant reduced modulo m.
/// Atoms are built through the factories below, which fold ground atoms
/// to true/false, so an Atom value always mentions at least one variable.
class Atom {
 public:
  const LinTerm& term() const { return term_; }
  Rel rel() const { return rel_; }
  const Integer& modulus() const { return modulus_; }
  bool is_divisibility() const { return rel_ == Rel::Div || rel_ == Rel::NDiv; }
  std::set<Var> vars() const { return term_.vars(); }

  Atom complement() const;
  bool holds(const Assignment& a) const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.rel_ == b.rel_ && a.modulus_ == b.modulus_ && a.term_ == b.term_;
  }
  friend bool operator<(const Atom& a, const Atom& b);

 private:
  friend class Formula;
  friend Formula make_atom(LinTerm t, Rel rel, const Integer& modulus);
  Atom(LinTerm t, Rel rel, Integer m) : term_(std::move(t)), rel_(rel), modulus_(std::move(m)) {}

  LinTerm term_;
  Rel rel_;
  Integer modulus_;
};

/// Quantifier-free LA formula in negation normal form. Negation is pushed
/// into atoms eagerly (the atom language is closed under complement), so the
/// only node kinds are constants, atoms, conjunctions and disjunctions.
/// Immutable, cheap to copy.
class Formula {
 public:
  enum class Kind { True, False, Atom, And, Or };

  Formula();  // true
  static Formula top();
  static Formula bottom();
  static Formula atom(const Atom& a);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula conj(const Formula& a, const Formula& b) { return conj(std::vector<Formula>{a, b}); }
  static Formula disj(const Formula& a, const Formula& b) { return disj(std::vector<Formula>{a, b}); }

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const chc::Atom& as_atom() const;
  const std::vector<Formula>& children() const;

  const std::set<Var>& free_vars() const;
  bool mentions(const Var& v) const;
  std::size_t atom_count() const;
  void collect_atoms(std::vector<chc::Atom>& out) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 struct Node;  // opaque

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Normalizing atom constructor; folds ground atoms into constants.
Formula make_atom(LinTerm t, Rel rel, const Integer& modulus = 0);
/// lhs OP rhs.
Formula make_atom(const LinTerm& lhs, RelOp op, const LinTerm& rhs);
Formula make_divides(const Integer& m, const LinTerm& t);

Formula negate(const Formula& f);
Formula implies(const Formula& a, const Formula& b);

/// Map every atom through fn and rebuild with the normalizing constructors.
template <class Fn>
Formula map_atoms(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: return fn(f.as_atom());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(map_atoms(c, fn));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

Formula substitute(const Formula& f, const Var& v, const LinTerm& t);
Formula substitute(const Formula& f, const std::map<Var, LinTerm>& s);
Formula rename(const Formula& f, const std::map<Var, Var>& r);
/// Substitute the numeric values of an assignment (partial allowed).
Formula instantiate(const Formula& f, const Assignment& a);

/// Exact evaluation. Throws if a free variable is unassigned, or, under LIA,
/// if an assigned value is not an integer.
bool eval_formula(const Formula& f, const Assignment& a, Theory th = Theory::LRA);

/// Theory-specific atom normalization: under LIA strict inequalities become
/// non-strict with a shifted constant, and bounds are tightened by the gcd of
/// the coefficients. Identity for LRA/LQA.
Formula normalize_for(const Formula& f, Theory th);

}  // namespace chc
