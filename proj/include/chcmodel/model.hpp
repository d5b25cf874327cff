#pragma once

#include <map>
#include <vector>

#include "chcmodel/core.hpp"

namespace chc {

/// Canonical argument variables x1..xn.
std::vector<Var> canonical_vars(std::size_t n);

/// Maps each predicate P/n to a formula over x1..xn. Absent predicates
/// are interpreted as false.
class SymbolicInterpretation {
 public:
  SymbolicInterpretation() = default;
  explicit SymbolicInterpretation(Signature sig) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }
  std::size_t arity(const Predicate& p) const;
  Formula get(const Predicate& p) const;
  void set(const Predicate& p, Formula f);

  /// P(args) under this interpretation.
  bool holds(const Predicate& p, const std::vector<Rational>& args, Theory th) const;

 private:
  Signature sig_;
  std::map<Predicate, Formula> formulas_;
};

/// Conjunction of the equalities forced by repeated argument variables:
/// y_k = x_i whenever y_k is a repeat of the variable first seen at i.
Formula sharing(const std::vector<Var>& ys, const std::vector<Var>& xs);

/// Instance of the interpretation of p at the argument variables `args`.
Formula instance_at(const SymbolicInterpretation& s, const Predicate& p, const std::vector<Var>& args);

/// Constraint plus the interpretation of every negative literal, in the
/// variables of c.
Formula body_formula(const Clause& c, const SymbolicInterpretation& s);

/// Contribution of c to its head predicate P over x1..xn. Requires the head
/// to be the strictly maximal literal.
Formula delta(const SymbolicInterpretation& s, const Clause& c, const Precedence& ord, Theory th);

struct ProductionRecord {
  Predicate predicate;
  ClauseId clause;
  Formula formula;  // delta of the clause at the time of writing
};

struct ModelResult {
  SymbolicInterpretation model;
  std::vector<ProductionRecord> records;
  /// stages[k] is the interpretation in force when the k-th predicate
  /// (ascending) was being computed.
  std::vector<SymbolicInterpretation> stages;
  std::vector<Predicate> order;
};

/// Least model candidate of n, built predicate by predicate in ascending
/// order. Fails if n contains a clause with an empty first-order part and
/// a satisfiable constraint.
ModelResult construct_model(const std::vector<Clause>& n, const Precedence& ord, const Signature& sig, Theory th);

/// Clauses whose contribution covers P(point). Fails if the model does not
/// make P(point) true.
std::vector<ClauseId> producers_of(const Predicate& p, const std::vector<Rational>& point, const ModelResult& m,
                                   Theory th);

}  // namespace chc
