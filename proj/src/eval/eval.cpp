#include "chcmodel/eval.hpp"

#include <algorithm>

#include "chcmodel/la.hpp"
#include "chcmodel/saturation.hpp"

namespace chc {

Formula clause_to_formula(const Clause& c, const SymbolicInterpretation& s) {
  std::vector<Formula> parts{negate(c.constraint_formula())};
  for (const auto& l : c.literals) {
    Formula inst = instance_at(s, l.atom.predicate, l.atom.args);
    parts.push_back(l.positive ? inst : negate(inst));
  }
  return Formula::disj(std::move(parts));
}

EvalReport check_clause(const Clause& c, const SymbolicInterpretation& s, Theory th) {
  EvalReport r;
  r.clause = c.id;
  auto m = find_model(negate(clause_to_formula(c, s)), th);
  if (!m) return r;
  r.valid = false;
  for (const auto& v : c.vars()) m->emplace(v, Rational(0));
  r.witness = std::move(*m);
  return r;
}

bool check_ground_literal(const GroundAtom& a, bool positive, const SymbolicInterpretation& s, Theory th) {
  if (is_integral_theory(th))
    for (const auto& q : a.args)
      if (!is_integer(q)) throw Error("non-integer argument under LIA");
  return s.holds(a.predicate, a.args, th) == positive;
}

std::optional<Explanation> explain(const std::vector<Clause>& n, const ModelResult& m, const Precedence& ord,
                                   Theory th) {
  struct Candidate {
    const Clause* clause;
    Assignment witness;
    std::size_t rank;
  };
  std::vector<Candidate> violated;
  for (const auto& c : n) {
    auto rep = check_clause(c, m.model, th);
    if (rep.valid) continue;
    if (c.fo_empty()) throw Error("clause set contains the empty clause " + clause_name(c.id));
    auto max = maximal_literals(c, ord);
    violated.push_back({&c, *rep.witness, ord.rank(c.literals[max.front().index].atom.predicate)});
  }
  if (violated.empty()) return std::nullopt;
  std::stable_sort(violated.begin(), violated.end(), [](const Candidate& a, const Candidate& b) {
    return std::make_tuple(a.rank, a.clause->literals.size(), a.clause->id) <
           std::make_tuple(b.rank, b.clause->literals.size(), b.clause->id);
  });

  std::map<ClauseId, const Clause*> by_id;
  for (const auto& c : n) by_id.emplace(c.id, &c);

  for (const auto& cand : violated) {
    const Clause& c = *cand.clause;
    for (const auto& ml : maximal_literals(c, ord)) {
      const Literal& lit = c.literals[ml.index];
      if (lit.positive) continue;
      GroundAtom atom{lit.atom.predicate, {}};
      for (const auto& v : lit.atom.args) atom.args.push_back(cand.witness.at(v));
      auto ids = producers_of(atom.predicate, atom.args, m, th);
      std::vector<const Clause*> producers;
      for (auto id : ids) producers.push_back(by_id.at(id));
      std::stable_sort(producers.begin(), producers.end(), [](const Clause* a, const Clause* b) {
        return std::make_pair(a->literals.size(), a->id) < std::make_pair(b->literals.size(), b->id);
      });
      for (const Clause* d : producers) {
        for (auto& r : resolve(c, *d, ord)) {
          if (r.provenance.left_literal != ml.index || r.provenance.right_literal != *d->positive_index()) continue;
          auto simp = simplify_clause(r, th);
          if (!simp) continue;
          if (is_redundant(*simp, n, ord, th)) continue;
          Explanation e;
          e.violated = c.id;
          e.witness = cand.witness;
          e.literal = ml.index;
          e.atom = atom;
          e.producer = d->id;
          e.resolvent = std::move(*simp);
          return e;
        }
      }
    }
  }
  throw Error("internal: the model violates the clause set but no non-redundant inference was found");
}

}  // namespace chc
