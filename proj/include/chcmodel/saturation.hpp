#pragma once

#include <optional>
#include <vector>

#include "chcmodel/core.hpp"

namespace chc {

/// Resolution on the maximal literals of c and d. Variables of d are
/// renamed apart first. The constraint of each conclusion is the multiset
/// union of the parents' constraints under the unifier, unsimplified.
/// Conclusions carry id 0 and a Resolvent provenance.
std::vector<Clause> resolve(const Clause& c, const Clause& d, const Precedence& ord);

/// Unsatisfiable constraint, or complementary literals over identical atoms.
bool is_tautology(const Clause& c, Theory th);

/// d subsumes c: some variable mapping rho sends the literals of d into a
/// sub-multiset of c's literals and c's constraint entails the constraint
/// of d (projected onto its first-order variables) under rho.
bool subsumes(const Clause& d, const Clause& c, Theory th);

/// Tautology or subsumed by a member of n.
bool is_redundant(const Clause& c, const std::vector<Clause>& n, const Precedence& ord, Theory th);

/// Simplifies the constraint of a clause. nullopt if it is unsatisfiable.
std::optional<Clause> simplify_clause(const Clause& c, Theory th);

struct Limits {
  std::size_t max_derived = 10000;
  double max_seconds = 60.0;
};

enum class Status { Running, Saturated, Refuted, ResourceOut };

std::string_view status_name(Status s);

struct TraceEvent {
  enum class Kind {
    Input,      // clause entered the usable set
    Given,      // clause selected and moved to worked-off
    Derived,    // new clause kept
    Discarded,  // conclusion dropped as tautology or subsumed
    Removed,    // stored clause dropped as subsumed
    Refuted,
  };
  Kind kind;
  ClauseId clause = 0;  // subject clause (0 for discarded conclusions)
  ClauseId left = 0, right = 0;  // parents for Derived/Discarded
  ClauseId by = 0;  // subsuming clause, 0 for tautologies
  std::optional<Clause> text;  // clause body where relevant
};

struct SaturationState {
  std::vector<Clause> usable;
  std::vector<Clause> worked_off;
  std::size_t derived_count = 0;
  Status status = Status::Running;
  std::optional<ClauseId> refutation;
  std::vector<TraceEvent> trace;
  /// Every clause that ever received an id, for provenance lookups.
  std::map<ClauseId, Clause> archive;
};

/// Given-clause loop. Selection takes the smallest clause (first-order
/// literal count, then constraint size, then id), with every fifth pick
/// taking the oldest clause instead so that no clause waits forever.
SaturationState saturate(const std::vector<Clause>& input, const Precedence& ord, Theory th,
                         const Limits& limits = {});

}  // namespace chc
