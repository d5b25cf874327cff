#pragma once

#include <map>
#include <set>
#include <vector>

#include "chcmodel/model.hpp"

namespace chc {

// Brute-force least-model computation over a finite integer window. LIA only.

using Tuple = std::vector<long long>;

class FiniteInterpretation {
 public:
  const std::set<Tuple>& get(const Predicate& p) const;
  void insert(const Predicate& p, Tuple t) { sets_[p].insert(std::move(t)); }
  bool contains(const Predicate& p, const Tuple& t) const;
  std::size_t size() const;
  const std::map<Predicate, std::set<Tuple>>& sets() const { return sets_; }

  /// Empty sets and missing entries are identified.
  friend bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b);

 private:
  std::map<Predicate, std::set<Tuple>> sets_;
};

/// One application of the immediate-consequence operator restricted to the
/// window: every head instance whose body atoms lie in `in` and whose
/// constraint holds, with all variables ranging over the window.
FiniteInterpretation tn_step(const std::vector<Clause>& n, const FiniteInterpretation& in, const Window& w,
                             Theory th);

struct LfpResult {
  FiniteInterpretation interp;
  /// Applications of the operator, counting the final one that confirmed
  /// the fixpoint.
  std::size_t steps = 0;
  bool reached = false;
};

LfpResult tn_lfp(const std::vector<Clause>& n, const Window& w, Theory th, std::size_t max_steps = 100000);

/// The symbolic model evaluated at every tuple of the window.
FiniteInterpretation restrict_model(const SymbolicInterpretation& s, const Window& w, Theory th);

FiniteInterpretation restrict_interp(const FiniteInterpretation& f, const Window& w);

/// The window lfp is stable under widening the window by one on each side.
bool is_window_closed(const std::vector<Clause>& n, const Window& w, Theory th);

struct Difference {
  Predicate predicate;
  Tuple tuple;
  bool in_model;
};

struct LeastCheck {
  bool agree = true;
  std::vector<Difference> differences;
  LfpResult lfp;
};

LeastCheck check_least(const std::vector<Clause>& n, const SymbolicInterpretation& s, const Window& w, Theory th);

}  // namespace chc
