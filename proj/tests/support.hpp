#pragma once

// Test-only oracles and generators. Nothing here calls the elimination
// engine, so the checks below are independent of the code under test.

#include <random>
#include <string>
#include <vector>

#include "chcmodel/frontend.hpp"

namespace chc::testing {

std::string fixture(const std::string& name);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(gen_) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

LinTerm random_term(Rng& rng, const std::vector<Var>& vars, long coeff, long konst);
/// A single comparison atom; under LIA optionally a divisibility atom.
Formula random_atom(Rng& rng, const std::vector<Var>& vars, Theory th, long coeff = 3, long konst = 6);
/// Random and/or nesting of atoms.
Formula random_formula(Rng& rng, const std::vector<Var>& vars, Theory th, int depth, long coeff = 3, long konst = 6);

/// All integer points of [lo,hi]^vars.
std::vector<Assignment> grid(const std::vector<Var>& vars, long lo, long hi);

/// Some integer extension of `base` over `extra` within [lo,hi] satisfies f.
bool grid_exists(const Formula& f, const Assignment& base, const std::vector<Var>& extra, long lo, long hi);

/// Satisfiability over the reals via DNF expansion and Fourier-Motzkin.
bool dnf_fm_sat(const Formula& f);

/// Window least fixpoint computed on unabstracted surface clauses by
/// enumerating every variable of a clause over the window.
FiniteInterpretation surface_lfp(const Problem& p, const Window& w);

/// Truth of a ground clause instance evaluated literal by literal.
bool direct_clause_eval(const Clause& c, const SymbolicInterpretation& s, const Assignment& beta, Theory th);

/// Random abstracted Horn clause set over predicates P0..P{k-1}.
struct RandomSet {
  Signature sig;
  Precedence ord;
  std::vector<Clause> clauses;
};
RandomSet random_clause_set(Rng& rng, Theory th);

/// Random interpretation: each predicate gets a random formula over x1..xn.
SymbolicInterpretation random_interpretation(Rng& rng, const Signature& sig, Theory th);

/// Random clause over the signature, abstracted.
Clause random_clause(Rng& rng, const Signature& sig, Theory th, ClauseId id);

Problem load(const std::string& name);

}  // namespace chc::testing
