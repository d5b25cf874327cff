#include "chcmodel/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "chcmodel/la.hpp"

namespace chc {

namespace {

std::vector<Literal> negatives_first(std::vector<Literal> lits) {
  std::stable_partition(lits.begin(), lits.end(), [](const Literal& l) { return !l.positive; });
  return lits;
}

// Undo renamings introduced by rename_apart where the original name is free.
Clause restore_names(const Clause& c, const std::map<Var, Var>& renaming) {
  std::set<Var> present = c.vars();
  std::map<Var, Var> back;
  for (const auto& [fresh, orig] : renaming) {
    if (!present.count(fresh) || present.count(orig)) continue;
    back.emplace(fresh, orig);
    present.erase(fresh);
    present.insert(orig);
  }
  if (back.empty()) return c;
  return apply_substitution(c, Substitution::renaming(back));
}

bool match_literals(const Clause& d, const Clause& c, std::size_t k, std::vector<bool>& used,
                    std::map<Var, Var>& rho, const std::function<bool(const std::map<Var, Var>&)>& done) {
  if (k == d.literals.size()) return done(rho);
  const Literal& ld = d.literals[k];
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (used[i]) continue;
    const Literal& lc = c.literals[i];
    if (lc.positive != ld.positive || lc.atom.predicate != ld.atom.predicate ||
        lc.atom.args.size() != ld.atom.args.size())
      continue;
    std::map<Var, Var> saved = rho;
    bool ok = true;
    for (std::size_t j = 0; j < ld.atom.args.size() && ok; ++j) {
      auto [it, inserted] = rho.emplace(ld.atom.args[j], lc.atom.args[j]);
      if (!inserted && it->second != lc.atom.args[j]) ok = false;
    }
    if (ok) {
      used[i] = true;
      if (match_literals(d, c, k + 1, used, rho, done)) return true;
      used[i] = false;
    }
    rho = std::move(saved);
  }
  return false;
}

Formula projected_constraint(const Clause& d, Theory th) {
  return project(d.fo_vars(), d.constraint_formula(), th);
}

bool subsumes_with(const Clause& d, const Formula& proj_d, const Clause& c, Theory th) {
  if (d.literals.size() > c.literals.size()) return false;
  if (proj_d.is_false()) return true;
  Formula lc = c.constraint_formula();
  std::vector<bool> used(c.literals.size(), false);
  std::map<Var, Var> rho;
  return match_literals(d, c, 0, used, rho, [&](const std::map<Var, Var>& r) {
    if (proj_d.is_true()) return true;
    return entails(lc, rename(proj_d, r), th);
  });
}

bool complementary_pair(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    for (std::size_t j = i + 1; j < c.literals.size(); ++j)
      if (c.literals[i].positive != c.literals[j].positive && c.literals[i].atom == c.literals[j].atom)
        return true;
  return false;
}

}  // namespace

std::vector<Clause> resolve(const Clause& c, const Clause& d, const Precedence& ord) {
  std::vector<Clause> out;
  if (c.fo_empty() || d.fo_empty()) return out;
  std::map<Var, Var> renaming;
  Clause d2 = rename_apart(d, c.vars(), renaming);
  auto mc = maximal_literals(c, ord);
  auto md = maximal_literals(d2, ord);
  for (const auto& mi : mc) {
    for (const auto& mj : md) {
      const Literal& l1 = c.literals[mi.index];
      const Literal& l2 = d2.literals[mj.index];
      if (l1.positive == l2.positive) continue;
      auto sigma = unify_atoms(l1.atom, l2.atom);
      if (!sigma) continue;
      Clause r;
      r.constraint = c.constraint;
      r.constraint.insert(r.constraint.end(), d2.constraint.begin(), d2.constraint.end());
      for (std::size_t i = 0; i < c.literals.size(); ++i)
        if (i != mi.index) r.literals.push_back(c.literals[i]);
      for (std::size_t j = 0; j < d2.literals.size(); ++j)
        if (j != mj.index) r.literals.push_back(d2.literals[j]);
      r = apply_substitution(r, *sigma);
      r.literals = negatives_first(std::move(r.literals));
      r = restore_names(r, renaming);
      r.provenance.kind = Provenance::Kind::Resolvent;
      r.provenance.left = c.id;
      r.provenance.right = d.id;
      r.provenance.left_literal = mi.index;
      r.provenance.right_literal = mj.index;
      r.provenance.unifier = *sigma;
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool is_tautology(const Clause& c, Theory th) {
  if (complementary_pair(c)) return true;
  return !find_model(c.constraint_formula(), th).has_value();
}

bool subsumes(const Clause& d, const Clause& c, Theory th) {
  return subsumes_with(d, projected_constraint(d, th), c, th);
}

bool is_redundant(const Clause& c, const std::vector<Clause>& n, const Precedence&, Theory th) {
  if (is_tautology(c, th)) return true;
  for (const auto& d : n)
    if (subsumes(d, c, th)) return true;
  return false;
}

std::optional<Clause> simplify_clause(const Clause& c, Theory th) {
  std::vector<Atom> atoms;
  for (const auto& f : c.constraint) {
    if (f.is_false()) return std::nullopt;
    f.collect_atoms(atoms);
  }
  auto simp = simplify_conjunction(atoms, th);
  if (!simp) return std::nullopt;
  Clause out = c;
  out.constraint.clear();
  for (const auto& a : *simp) out.constraint.push_back(Formula::atom(a));
  return out;
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Running: return "running";
    case Status::Saturated: return "saturated";
    case Status::Refuted: return "refuted";
    case Status::ResourceOut: return "resource_out";
  }
  return "?";
}

SaturationState saturate(const std::vector<Clause>& input, const Precedence& ord, Theory th,
                         const Limits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  SaturationState st;
  std::map<ClauseId, Formula> proj_cache;
  auto proj = [&](const Clause& d) -> const Formula& {
    auto it = proj_cache.find(d.id);
    if (it == proj_cache.end()) it = proj_cache.emplace(d.id, projected_constraint(d, th)).first;
    return it->second;
  };

  ClauseId next_id = 1;
  for (const auto& c : input) {
    if (!c.is_horn()) throw Error("clause " + clause_name(c.id) + " is not Horn");
    for (const auto& l : c.literals) ord.rank(l.atom.predicate);
    next_id = std::max(next_id, c.id + 1);
    st.usable.push_back(c);
    st.archive.emplace(c.id, c);
    st.trace.push_back({TraceEvent::Kind::Input, c.id, 0, 0, 0, c});
  }

  auto weight = [](const Clause& c) { return std::make_tuple(c.literals.size(), c.constraint.size(), c.id); };
  std::size_t picks = 0;

  while (true) {
    if (st.usable.empty()) {
      st.status = Status::Saturated;
      break;
    }
    double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (st.derived_count >= limits.max_derived || elapsed > limits.max_seconds) {
      st.status = Status::ResourceOut;
      break;
    }

    auto pick = ++picks % 5 == 0
                    ? std::min_element(st.usable.begin(), st.usable.end(),
                                       [](const Clause& a, const Clause& b) { return a.id < b.id; })
                    : std::min_element(st.usable.begin(), st.usable.end(),
                                       [&](const Clause& a, const Clause& b) { return weight(a) < weight(b); });
    Clause given = std::move(*pick);
    st.usable.erase(pick);

    if (is_tautology(given, th)) {
      st.trace.push_back({TraceEvent::Kind::Removed, given.id, 0, 0, 0, std::nullopt});
      continue;
    }
    ClauseId subsumer = 0;
    for (const auto& w : st.worked_off)
      if (subsumes_with(w, proj(w), given, th)) {
        subsumer = w.id;
        break;
      }
    if (subsumer) {
      st.trace.push_back({TraceEvent::Kind::Removed, given.id, 0, 0, subsumer, std::nullopt});
      continue;
    }

    st.trace.push_back({TraceEvent::Kind::Given, given.id, 0, 0, 0, std::nullopt});
    if (given.fo_empty()) {
      st.worked_off.push_back(given);
      st.status = Status::Refuted;
      st.refutation = given.id;
      st.trace.push_back({TraceEvent::Kind::Refuted, given.id, 0, 0, 0, std::nullopt});
      break;
    }

    auto backward = [&](std::vector<Clause>& set) {
      for (auto it = set.begin(); it != set.end();) {
        if (subsumes_with(given, proj(given), *it, th)) {
          st.trace.push_back({TraceEvent::Kind::Removed, it->id, 0, 0, given.id, std::nullopt});
          it = set.erase(it);
        } else {
          ++it;
        }
      }
    };
    backward(st.worked_off);
    backward(st.usable);
    st.worked_off.push_back(given);

    std::vector<Clause> partners = st.worked_off;
    for (const auto& w : partners) {
      for (auto& r : resolve(given, w, ord)) {
        auto simp = simplify_clause(r, th);
        if (!simp || complementary_pair(*simp)) {
          st.trace.push_back({TraceEvent::Kind::Discarded, 0, given.id, w.id, 0, std::nullopt});
          continue;
        }
        ClauseId by = 0;
        for (const auto* set : {&st.worked_off, &st.usable}) {
          for (const auto& d : *set)
            if (subsumes_with(d, proj(d), *simp, th)) {
              by = d.id;
              break;
            }
          if (by) break;
        }
        if (by) {
          st.trace.push_back({TraceEvent::Kind::Discarded, 0, given.id, w.id, by, std::nullopt});
          continue;
        }
        simp->id = next_id++;
        ++st.derived_count;
        st.archive.emplace(simp->id, *simp);
        st.trace.push_back({TraceEvent::Kind::Derived, simp->id, given.id, w.id, 0, *simp});
        st.usable.push_back(std::move(*simp));
      }
    }
  }
  return st;
}

}  // namespace chc
