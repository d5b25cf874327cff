#pragma once

#include <optional>

#include "chcmodel/model.hpp"

namespace chc {

/// The clause as a quantifier-free formula over its variables, read under
/// universal closure: not Lambda, or some literal instance.
Formula clause_to_formula(const Clause& c, const SymbolicInterpretation& s);

struct EvalReport {
  ClauseId clause = 0;
  bool valid = true;
  /// Assignment to every variable of the clause falsifying it.
  std::optional<Assignment> witness;
};

EvalReport check_clause(const Clause& c, const SymbolicInterpretation& s, Theory th);

struct GroundAtom {
  Predicate predicate;
  std::vector<Rational> args;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

bool check_ground_literal(const GroundAtom& a, bool positive, const SymbolicInterpretation& s, Theory th);

struct Explanation {
  ClauseId violated = 0;
  Assignment witness;
  std::size_t literal = 0;  // negative maximal literal of the violated clause
  GroundAtom atom;          // its ground instance, true in the model
  ClauseId producer = 0;
  Clause resolvent;         // constraint simplified, id 0
};

/// Inference witnessing that n is not saturated: a clause violated by the
/// constructed model, resolved with a clause producing the atom that makes
/// it false. nullopt when the model satisfies every clause. Violated
/// clauses are tried by the rank of their maximal predicate, then by size
/// and id; producers by size and id.
std::optional<Explanation> explain(const std::vector<Clause>& n, const ModelResult& m, const Precedence& ord,
                                   Theory th);

}  // namespace chc
