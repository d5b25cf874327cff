#pragma once

#include <optional>
#include <set>
#include <vector>

#include "chcmodel/formula.hpp"

namespace chc {

/// Cheap syntactic clean-up: theory normalization of atoms, merging of
/// bounds over the same linear form, and detection of trivially
/// contradictory / tautological sibling pairs. Always equivalence preserving.
Formula tidy(const Formula& f, Theory th);

/// Quantifier-free equivalent of  exists x. f.
/// LRA/LQA: Gaussian substitution on equalities, Fourier-Motzkin on plain
/// conjunctions, Loos-Weispfenning virtual substitution otherwise.
/// LIA: Cooper's method (may introduce divisibility atoms).
Formula eliminate(const Var& x, const Formula& f, Theory th);

/// Quantifier-free equivalent of  exists (vars(f) \ keep). f, simplified.
Formula project(const std::set<Var>& keep, const Formula& f, Theory th);

/// A satisfying assignment of every free variable of f, or nullopt.
std::optional<Assignment> find_model(const Formula& f, Theory th);

struct SatResult {
  bool sat = false;
  Assignment witness;  // meaningful only when sat
};

SatResult is_satisfiable(const Formula& f, Theory th);

/// f |= g, i.e. f and not g is unsatisfiable.
bool entails(const Formula& f, const Formula& g, Theory th);
bool equivalent(const Formula& f, const Formula& g, Theory th);
bool is_valid(const Formula& f, Theory th);

/// Equivalence-preserving simplification: tidy plus, for small formulas,
/// semantic folding to true/false and removal of children implied by
/// their siblings.
Formula simplify(const Formula& f, Theory th);

/// Simplify a conjunction of atoms, keeping it a conjunction of atoms.
/// nullopt when the conjunction is unsatisfiable.
std::optional<std::vector<Atom>> simplify_conjunction(const std::vector<Atom>& atoms, Theory th);

/// Conjunction of the given atoms as a formula.
Formula conjunction_of(const std::vector<Atom>& atoms);

}  // namespace chc
