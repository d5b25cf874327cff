#include "chcmodel/model.hpp"

#include <algorithm>

#include "chcmodel/la.hpp"

namespace chc {

std::vector<Var> canonical_vars(std::size_t n) {
  std::vector<Var> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::size_t SymbolicInterpretation::arity(const Predicate& p) const {
  auto it = sig_.find(p);
  if (it == sig_.end()) throw Error("undeclared predicate '" + p + "'");
  return it->second;
}

Formula SymbolicInterpretation::get(const Predicate& p) const {
  arity(p);
  auto it = formulas_.find(p);
  return it == formulas_.end() ? Formula::bottom() : it->second;
}

void SymbolicInterpretation::set(const Predicate& p, Formula f) {
  auto xs = canonical_vars(arity(p));
  for (const auto& v : f.free_vars())
    if (std::find(xs.begin(), xs.end(), v) == xs.end())
      throw Error("interpretation of " + p + " mentions stray variable '" + v + "'");
  formulas_[p] = std::move(f);
}

bool SymbolicInterpretation::holds(const Predicate& p, const std::vector<Rational>& args, Theory th) const {
  auto xs = canonical_vars(arity(p));
  if (args.size() != xs.size()) throw Error("wrong number of arguments for " + p);
  Assignment a;
  for (std::size_t i = 0; i < xs.size(); ++i) a.emplace(xs[i], args[i]);
  return eval_formula(get(p), a, th);
}

Formula sharing(const std::vector<Var>& ys, const std::vector<Var>& xs) {
  std::vector<Formula> parts;
  std::map<Var, std::size_t> first;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    auto [it, inserted] = first.emplace(ys[k], k);
    if (!inserted)
      parts.push_back(make_atom(LinTerm::variable(xs[k]), RelOp::Eq, LinTerm::variable(xs[it->second])));
  }
  return Formula::conj(std::move(parts));
}

Formula instance_at(const SymbolicInterpretation& s, const Predicate& p, const std::vector<Var>& args) {
  auto xs = canonical_vars(s.arity(p));
  if (args.size() != xs.size()) throw Error("wrong number of arguments for " + p);
  std::map<Var, Var> r;
  for (std::size_t i = 0; i < xs.size(); ++i) r.emplace(xs[i], args[i]);
  return rename(s.get(p), r);
}

Formula body_formula(const Clause& c, const SymbolicInterpretation& s) {
  std::vector<Formula> parts = c.constraint;
  for (const auto& l : c.literals)
    if (!l.positive) parts.push_back(instance_at(s, l.atom.predicate, l.atom.args));
  return Formula::conj(std::move(parts));
}

Formula delta(const SymbolicInterpretation& s, const Clause& c, const Precedence& ord, Theory th) {
  auto pos = c.positive_index();
  if (!pos) throw Error("clause " + clause_name(c.id) + " has no positive literal");
  bool strict_max = false;
  for (const auto& m : maximal_literals(c, ord))
    if (m.index == *pos && m.strict) strict_max = true;
  if (!strict_max) throw Error("head of " + clause_name(c.id) + " is not strictly maximal");

  const FOAtom& head = c.literals[*pos].atom;
  auto xs = canonical_vars(head.args.size());
  std::set<Var> ys(head.args.begin(), head.args.end());
  Formula proj = project(ys, body_formula(c, s), th);
  std::map<Var, Var> sigma;
  for (std::size_t i = 0; i < head.args.size(); ++i) sigma.emplace(head.args[i], xs[i]);
  return simplify(Formula::conj(rename(proj, sigma), sharing(head.args, xs)), th);
}

ModelResult construct_model(const std::vector<Clause>& n, const Precedence& ord, const Signature& sig, Theory th) {
  for (const auto& c : n)
    if (c.fo_empty() && find_model(c.constraint_formula(), th))
      throw Error("clause set contains the empty clause " + clause_name(c.id));
  for (const auto& [p, k] : sig) ord.rank(p);

  ModelResult res;
  res.model = SymbolicInterpretation(sig);
  res.order = ord.ascending();
  for (const auto& p : res.order) {
    if (!sig.count(p)) throw Error("predicate '" + p + "' has no declared arity");
    res.stages.push_back(res.model);
    std::vector<Formula> parts;
    for (const auto& c : n) {
      auto pos = c.positive_index();
      if (!pos || c.literals[*pos].atom.predicate != p) continue;
      bool maximal = false;
      for (const auto& m : maximal_literals(c, ord))
        if (m.index == *pos) maximal = true;
      if (!maximal) continue;
      if (!find_model(body_formula(c, res.model), th)) continue;
      Formula d = delta(res.model, c, ord, th);
      res.records.push_back({p, c.id, d});
      parts.push_back(d);
    }
    res.model.set(p, simplify(Formula::disj(std::move(parts)), th));
  }
  return res;
}

std::vector<ClauseId> producers_of(const Predicate& p, const std::vector<Rational>& point, const ModelResult& m,
                                   Theory th) {
  if (!m.model.holds(p, point, th)) throw Error("the model does not satisfy " + p + " at the given point");
  auto xs = canonical_vars(m.model.arity(p));
  Assignment a;
  for (std::size_t i = 0; i < xs.size(); ++i) a.emplace(xs[i], point[i]);
  std::vector<ClauseId> out;
  for (const auto& r : m.records)
    if (r.predicate == p && eval_formula(r.formula, a, th)) out.push_back(r.clause);
  return out;
}

}  // namespace chc
