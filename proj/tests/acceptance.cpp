#include <chrono>
#include <functional>
#include <iostream>

#include "chcmodel/la.hpp"
#include "support.hpp"

using namespace chc;
using namespace chc::testing;

namespace {

const std::vector<std::string> kWindowFixtures{
    "ex3-lia.chc",   "lia-ex4.chc",  "lia-chain.chc", "lia-tc.chc",     "lia-diagonal.chc", "lia-even.chc",
    "lia-facts.chc", "lia-goal.chc", "lia-order.chc", "lia-strict.chc", "lia-nullary.chc",  "lia-counter.chc"};

struct Check {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

Formula F(const std::string& s, Theory th) { return parse_formula(s, th); }

ModelResult saturated_model(const Problem& p, std::vector<Clause>* kept = nullptr) {
  auto st = saturate(p.to_clauses(), p.precedence(), p.theory);
  if (st.status != Status::Saturated) throw Error("fixture did not saturate");
  if (kept) *kept = st.worked_off;
  return construct_model(st.worked_off, p.precedence(), p.signature(), p.theory);
}

void criterion1(Check& c) {
  auto p = load("ex3.chc");
  auto m = saturated_model(p);
  c.require(equivalent(m.model.get("P"), F("(and (<= 0 x1) (<= x1 2) (<= 0 x2) (<= x2 2))", p.theory), p.theory),
            "P differs");
  c.require(equivalent(m.model.get("Q"), F("(and (>= x1 1) (>= x2 1))", p.theory), p.theory), "Q differs");
}

void criterion2(Check& c) {
  auto p = load("ex4-unsaturated.chc");
  auto n = p.to_clauses();
  auto m = construct_model(n, p.precedence(), p.signature(), p.theory);
  c.require(equivalent(m.model.get("P"), F("(or (< x1 0) (> x1 0))", p.theory), p.theory), "P differs");
  c.require(equivalent(m.model.get("Q"), F("(< x1 1)", p.theory), p.theory), "Q differs");
  auto r = check_clause(n[3], m.model, p.theory);
  c.require(!r.valid && r.witness.has_value(), "C4 not reported violated");
  if (r.witness) {
    Formula shape = F("(and (<= x 0) (< x 1) (>= x 0) (<= x 0))", p.theory);
    c.require(eval_formula(shape, {{"x", r.witness->at("x")}}), "witness outside x<=0, x<1, not P");
  }
  Assignment zero{{"x", Rational(0)}};
  c.require(!eval_formula(clause_to_formula(n[3], m.model), zero), "x = 0 not a falsifying point");
  auto e = explain(n, m, p.precedence(), p.theory);
  c.require(e.has_value(), "no explanation");
  if (!e) return;
  c.require(e->violated == 4 && e->producer == 3, "explanation is not C3 x C4");
  const auto& lits = e->resolvent.literals;
  c.require(lits.size() == 1 && lits[0].positive && lits[0].atom.predicate == "P", "resolvent is not || P(x)");
  if (lits.size() != 1) return;
  Var v = lits[0].atom.args[0];
  c.require(equivalent(e->resolvent.constraint_formula(), F("(<= " + v + " 0)", p.theory), p.theory),
            "resolvent constraint is not x <= 0");
  Clause added = e->resolvent;
  added.id = 5;
  n.push_back(added);
  auto m2 = construct_model(n, p.precedence(), p.signature(), p.theory);
  c.require(equivalent(m2.model.get("P"), Formula::top(), p.theory), "P is not true after adding the resolvent");
}

void criterion3(Check& c) {
  Rng rng(1001);
  int sets = 0, violations = 0;
  for (int i = 0; i < 2000 && sets < 25; ++i) {
    auto rs = random_clause_set(rng, Theory::LIA);
    auto st = saturate(rs.clauses, rs.ord, Theory::LIA, Limits{60, 2.0});
    if (st.status != Status::Saturated) continue;
    ++sets;
    auto m = construct_model(st.worked_off, rs.ord, rs.sig, Theory::LIA);
    for (const auto& cl : rs.clauses)
      if (!check_clause(cl, m.model, Theory::LIA).valid) ++violations;
    for (const auto& cl : st.worked_off)
      if (!check_clause(cl, m.model, Theory::LIA).valid) ++violations;
  }
  c.require(sets >= 20, "only " + std::to_string(sets) + " sets saturated");
  c.require(violations == 0, std::to_string(violations) + " violated clauses");
  c.note = c.ok ? std::to_string(sets) + " sets" : c.note;
}

void criterion4(Check& c) {
  int used = 0;
  for (const auto& name : kWindowFixtures) {
    auto p = load(name);
    auto n = p.to_clauses();
    if (!p.window || !is_window_closed(n, *p.window, p.theory)) {
      c.require(false, name + " is not window-closed");
      continue;
    }
    auto m = saturated_model(p);
    auto lfp = tn_lfp(n, *p.window, p.theory);
    c.require(lfp.reached, name + ": no fixpoint");
    c.require(restrict_model(m.model, *p.window, p.theory) == lfp.interp, name + ": model differs from lfp");
    ++used;
  }
  c.require(used >= 10, "fewer than 10 fixtures");
  c.note = c.ok ? std::to_string(used) + " fixtures" : c.note;
}

void criterion5(Check& c) {
  Rng rng(1005);
  const std::vector<Var> vars{"x", "y", "z"};
  int lia = 0, lra = 0;
  for (; lia < 500; ++lia) {
    std::vector<Formula> parts{random_formula(rng, vars, Theory::LIA, 2)};
    for (const auto& v : vars) {
      parts.push_back(make_atom(LinTerm::variable(v), RelOp::Ge, LinTerm::constant(-8)));
      parts.push_back(make_atom(LinTerm::variable(v), RelOp::Le, LinTerm::constant(8)));
    }
    Formula f = Formula::conj(parts);
    std::vector<Var> keep, drop;
    for (const auto& v : vars) (rng.chance(0.5) ? keep : drop).push_back(v);
    Formula p = project(std::set<Var>(keep.begin(), keep.end()), f, Theory::LIA);
    for (const auto& a : grid(keep, -8, 8))
      if (eval_formula(p, a, Theory::LIA) != grid_exists(f, a, drop, -8, 8)) {
        c.require(false, "projection disagrees with grid: " + format_formula(f));
        return;
      }
  }
  for (; lra < 500; ++lra) {
    Formula f = random_formula(rng, vars, Theory::LRA, 2);
    if (is_satisfiable(f, Theory::LRA).sat != dnf_fm_sat(f)) {
      c.require(false, "satisfiability disagrees with DNF+FM: " + format_formula(f));
      return;
    }
  }
  c.note = std::to_string(lia) + " LIA, " + std::to_string(lra) + " LRA";
}

void criterion6(Check& c) {
  Rng rng(1006);
  int triples = 0;
  while (triples < 1200) {
    Theory th = rng.chance(0.5) ? Theory::LIA : Theory::LRA;
    Signature sig{{"P0", 1}, {"P1", 2}, {"P2", 1}};
    Clause cl = random_clause(rng, sig, th, 1);
    auto s = random_interpretation(rng, sig, th);
    Formula f = clause_to_formula(cl, s);
    for (int k = 0; k < 4; ++k, ++triples) {
      Assignment beta;
      for (const auto& v : cl.vars())
        beta[v] = th == Theory::LIA || rng.chance(0.5) ? Rational(rng.range(-5, 5))
                                                       : make_rational(rng.range(-10, 10), rng.range(1, 3));
      if (eval_formula(f, beta, th) != direct_clause_eval(cl, s, beta, th)) {
        c.require(false, "disagreement on " + format_clause(cl));
        return;
      }
    }
  }
  c.note = std::to_string(triples) + " triples";
}

// Sample points of the model: window points for LIA, a half-integer grid for LRA.
std::vector<std::vector<Rational>> model_points(const ModelResult& m, const Predicate& p, Theory th, Rng& rng) {
  std::vector<std::vector<Rational>> out;
  auto xs = canonical_vars(m.model.arity(p));
  for (const auto& a : grid(xs, -4, 8)) {
    std::vector<Rational> pt;
    for (const auto& x : xs)
      pt.push_back(th == Theory::LRA && rng.chance(0.3) ? a.at(x) / Rational(2) : a.at(x));
    if (m.model.holds(p, pt, th)) out.push_back(pt);
    if (out.size() >= 40) break;
  }
  return out;
}

void check_production(Check& c, const std::string& label, const std::vector<Clause>& n, const ModelResult& m,
                      Theory th, Rng& rng, int& points) {
  std::map<ClauseId, const Clause*> by_id;
  for (const auto& cl : n) by_id[cl.id] = &cl;
  for (std::size_t k = 0; k < m.order.size(); ++k) {
    const Predicate& p = m.order[k];
    const auto& stage = m.stages[k];
    for (const auto& pt : model_points(m, p, th, rng)) {
      ++points;
      auto prods = producers_of(p, pt, m, th);
      if (prods.empty()) {
        c.require(false, label + ": point of " + p + " without producer");
        return;
      }
      const Clause& cl = *by_id.at(prods.front());
      const auto& head = cl.literals[*cl.positive_index()].atom;
      std::vector<Formula> at{body_formula(cl, stage)};
      for (std::size_t i = 0; i < pt.size(); ++i)
        at.push_back(make_atom(LinTerm::variable(head.args[i]), RelOp::Eq, LinTerm::constant(pt[i])));
      if (!find_model(Formula::conj(at), th)) {
        c.require(false, label + ": producer does not re-derive a point of " + p);
        return;
      }
    }
    for (const auto& r : m.records) {
      if (r.predicate != p) continue;
      const Clause& cl = *by_id.at(r.clause);
      const auto& head = cl.literals[*cl.positive_index()].atom;
      if (!entails(body_formula(cl, stage), instance_at(m.model, p, head.args), th)) {
        c.require(false, label + ": C" + std::to_string(cl.id) + " produces outside the model");
        return;
      }
    }
  }
}

void criterion7(Check& c) {
  Rng rng(1007);
  int points = 0, sets = 0;
  std::vector<std::string> names{"ex3.chc", "ex4-unsaturated.chc", "ex4-saturated.chc"};
  names.insert(names.end(), kWindowFixtures.begin(), kWindowFixtures.end());
  for (const auto& name : names) {
    auto p = load(name);
    std::vector<Clause> n;
    auto m = name == "ex4-unsaturated.chc" ? construct_model(n = p.to_clauses(), p.precedence(), p.signature(), p.theory)
                                           : saturated_model(p, &n);
    check_production(c, name, n, m, p.theory, rng, points);
  }
  Rng gen(1001);
  for (int i = 0; i < 2000 && sets < 20; ++i) {
    auto rs = random_clause_set(gen, Theory::LIA);
    auto st = saturate(rs.clauses, rs.ord, Theory::LIA, Limits{60, 2.0});
    if (st.status != Status::Saturated) continue;
    ++sets;
    auto m = construct_model(st.worked_off, rs.ord, rs.sig, Theory::LIA);
    check_production(c, "random set " + std::to_string(i), st.worked_off, m, Theory::LIA, rng, points);
  }
  c.require(points > 0, "no model points sampled");
  c.note = c.ok ? std::to_string(points) + " points" : c.note;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> all{
      {1, "box fixture model", 1, criterion1},
      {2, "punctured fixture model, witness and explanation", 1, criterion2},
      {3, "random saturated LIA sets are models", 60, criterion3},
      {4, "model equals window least fixpoint", 30, criterion4},
      {5, "elimination differential", 120, criterion5},
      {6, "evaluation correspondence", 0, criterion6},
      {7, "producer and produces", 0, criterion7},
  };
  int failed = 0;
  for (const auto& cr : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget > 0 && secs >= cr.budget) c.require(false, "over time budget");
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.number << ": " << cr.name << " (" << c.note
              << (c.note.empty() ? "" : ", ") << secs << " s)" << std::endl;
    if (!c.ok) ++failed;
  }
  std::cout << "EXCLUDED criterion 8: no benchmark tables to reproduce\n";
  return failed == 0 ? 0 : 1;
}
