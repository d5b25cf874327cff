#include "support.hpp"

#include <functional>

namespace chc::testing {

std::string fixture(const std::string& name) { return std::string(CHC_FIXTURE_DIR) + "/" + name; }

Problem load(const std::string& name) { return load_problem(fixture(name)); }

LinTerm random_term(Rng& rng, const std::vector<Var>& vars, long coeff, long konst) {
  LinTerm t = LinTerm::constant(Rational(rng.range(-konst, konst)));
  for (const auto& v : vars)
    if (rng.chance(0.6)) t = t + LinTerm::variable(v, Rational(rng.range(-coeff, coeff)));
  if (t.vars().empty() && !vars.empty()) {
    long c = rng.range(1, coeff);
    t = t + LinTerm::variable(rng.pick(vars), Rational(rng.chance(0.5) ? c : -c));
  }
  return t;
}

Formula random_atom(Rng& rng, const std::vector<Var>& vars, Theory th, long coeff, long konst) {
  LinTerm t = random_term(rng, vars, coeff, konst);
  long r = rng.range(0, 99);
  if (th == Theory::LIA && r < 8) return make_atom(t, rng.chance(0.7) ? Rel::Div : Rel::NDiv, Integer(rng.range(2, 4)));
  if (r < 45) return make_atom(t, Rel::Le);
  if (r < 80) return make_atom(t, Rel::Lt);
  if (r < 92) return make_atom(t, Rel::Eq);
  return make_atom(t, Rel::Ne);
}

Formula random_formula(Rng& rng, const std::vector<Var>& vars, Theory th, int depth, long coeff, long konst) {
  if (depth <= 0 || rng.chance(0.25)) return random_atom(rng, vars, th, coeff, konst);
  std::vector<Formula> kids;
  long n = rng.range(2, 3);
  for (long i = 0; i < n; ++i) kids.push_back(random_formula(rng, vars, th, depth - 1, coeff, konst));
  return rng.chance(0.5) ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

std::vector<Assignment> grid(const std::vector<Var>& vars, long lo, long hi) {
  std::vector<Assignment> out{Assignment{}};
  for (const auto& v : vars) {
    std::vector<Assignment> next;
    for (const auto& a : out)
      for (long k = lo; k <= hi; ++k) {
        Assignment b = a;
        b[v] = Rational(k);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

bool grid_exists(const Formula& f, const Assignment& base, const std::vector<Var>& extra, long lo, long hi) {
  for (auto a : grid(extra, lo, hi)) {
    a.insert(base.begin(), base.end());
    if (eval_formula(f, a, Theory::LIA)) return true;
  }
  return false;
}

namespace {

struct Row {
  LinTerm t;
  Rel rel;  // Le, Lt or Eq, meaning t REL 0
};
using Cube = std::vector<Row>;

std::vector<Cube> dnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return {Cube{}};
    case Formula::Kind::False: return {};
    case Formula::Kind::Atom: {
      const Atom& a = f.as_atom();
      switch (a.rel()) {
        case Rel::Le:
        case Rel::Lt:
        case Rel::Eq: return {Cube{{a.term(), a.rel()}}};
        case Rel::Ne: return {Cube{{a.term(), Rel::Lt}}, Cube{{-a.term(), Rel::Lt}}};
        default: throw Error("divisibility atom in a real formula");
      }
    }
    case Formula::Kind::And: {
      std::vector<Cube> acc{Cube{}};
      for (const auto& c : f.children()) {
        std::vector<Cube> next;
        for (const auto& left : acc)
          for (const auto& right : dnf(c)) {
            Cube k = left;
            k.insert(k.end(), right.begin(), right.end());
            next.push_back(std::move(k));
          }
        acc = std::move(next);
      }
      return acc;
    }
    case Formula::Kind::Or: {
      std::vector<Cube> acc;
      for (const auto& c : f.children()) {
        auto d = dnf(c);
        acc.insert(acc.end(), d.begin(), d.end());
      }
      return acc;
    }
  }
  return {};
}

bool fm(Cube cube) {
  while (true) {
    std::optional<Var> x;
    for (const auto& r : cube)
      if (!r.t.vars().empty()) {
        x = *r.t.vars().begin();
        break;
      }
    if (!x) {
      for (const auto& r : cube) {
        const Rational& k = r.t.constant_term();
        if ((r.rel == Rel::Le && k > 0) || (r.rel == Rel::Lt && k >= 0) || (r.rel == Rel::Eq && k != 0))
          return false;
      }
      return true;
    }
    auto eq = std::find_if(cube.begin(), cube.end(), [&](const Row& r) { return r.rel == Rel::Eq && r.t.has_var(*x); });
    if (eq != cube.end()) {
      Rational a = eq->t.coeff(*x);
      LinTerm solved = eq->t.without(*x) * (Rational(-1) / a);
      cube.erase(eq);
      for (auto& r : cube) r.t = r.t.substitute(*x, solved);
      continue;
    }
    Cube rest, lower, upper;
    for (const auto& r : cube) {
      Rational c = r.t.coeff(*x);
      if (c == 0)
        rest.push_back(r);
      else
        (c > 0 ? upper : lower).push_back(r);
    }
    for (const auto& l : lower)
      for (const auto& u : upper) {
        LinTerm sum = u.t * (Rational(1) / u.t.coeff(*x)) + l.t * (Rational(1) / -l.t.coeff(*x));
        rest.push_back({sum, (l.rel == Rel::Lt || u.rel == Rel::Lt) ? Rel::Lt : Rel::Le});
      }
    cube = std::move(rest);
  }
}

}  // namespace

bool dnf_fm_sat(const Formula& f) {
  for (const auto& cube : dnf(f))
    if (fm(cube)) return true;
  return false;
}

FiniteInterpretation surface_lfp(const Problem& p, const Window& w) {
  auto tuple_of = [&](const std::vector<LinTerm>& args, const Assignment& a, Tuple& out) {
    out.clear();
    for (const auto& t : args) {
      Rational q = t.evaluate(a);
      if (!is_integer(q)) return false;
      long long v = q.get_num().get_si();
      if (v < w.lo || v > w.hi) return false;
      out.push_back(v);
    }
    return true;
  };
  FiniteInterpretation cur;
  while (true) {
    FiniteInterpretation next;
    for (const auto& c : p.clauses) {
      const SurfaceLiteral* head = nullptr;
      std::set<Var> vs;
      for (const auto& f : c.constraint) vs.insert(f.free_vars().begin(), f.free_vars().end());
      for (const auto& l : c.literals) {
        if (l.positive) head = &l;
        for (const auto& t : l.atom.args) {
          auto tv = t.vars();
          vs.insert(tv.begin(), tv.end());
        }
      }
      if (!head) continue;
      std::vector<Var> vars(vs.begin(), vs.end());
      Tuple t;
      for (const auto& a : grid(vars, static_cast<long>(w.lo), static_cast<long>(w.hi))) {
        if (!eval_formula(Formula::conj(c.constraint), a, p.theory)) continue;
        bool body = true;
        for (const auto& l : c.literals)
          if (!l.positive && !(tuple_of(l.atom.args, a, t) && cur.contains(l.atom.predicate, t))) body = false;
        if (body && tuple_of(head->atom.args, a, t)) next.insert(head->atom.predicate, t);
      }
    }
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

bool direct_clause_eval(const Clause& c, const SymbolicInterpretation& s, const Assignment& beta, Theory th) {
  if (!eval_formula(c.constraint_formula(), beta, th)) return true;
  for (const auto& l : c.literals) {
    GroundAtom g{l.atom.predicate, {}};
    for (const auto& v : l.atom.args) g.args.push_back(beta.at(v));
    if (check_ground_literal(g, l.positive, s, th)) return true;
  }
  return false;
}

Clause random_clause(Rng& rng, const Signature& sig, Theory th, ClauseId id) {
  static const std::vector<Var> pool{"x", "y", "z", "u"};
  std::vector<Predicate> preds;
  for (const auto& [p, n] : sig) preds.push_back(p);
  long kind = rng.range(0, 99);
  bool has_head = kind < 90;
  long body = kind < 45 ? 0 : rng.range(1, 2);
  Clause c;
  c.id = id;
  auto lit = [&](bool positive) {
    const Predicate& p = rng.pick(preds);
    Literal l{positive, {p, {}}};
    for (std::size_t i = 0; i < sig.at(p); ++i) l.atom.args.push_back(rng.pick(pool));
    return l;
  };
  for (long i = 0; i < body; ++i) c.literals.push_back(lit(false));
  if (has_head) c.literals.push_back(lit(true));
  if (c.literals.empty()) c.literals.push_back(lit(true));
  std::set<Var> vs = c.fo_vars();
  std::vector<Var> vars(vs.begin(), vs.end());
  if (vars.empty() || rng.chance(0.3)) vars.push_back("w");
  long atoms = rng.range(1, 3);
  for (long i = 0; i < atoms; ++i) {
    LinTerm t = random_term(rng, vars, 3, 6);
    long r = rng.range(0, 99);
    Rel rel = r < 45 ? Rel::Le : r < 80 ? Rel::Lt : r < 92 ? Rel::Eq : Rel::Ne;
    Formula f = make_atom(t, rel);
    if (!f.is_true()) c.constraint.push_back(f);
  }
  if (auto pos = c.positive_index())
    for (const auto& v : c.literals[*pos].atom.args)
      if (rng.chance(0.5)) {
        c.constraint.push_back(make_atom(LinTerm::variable(v), RelOp::Ge, LinTerm::constant(Rational(rng.range(-4, 0)))));
        c.constraint.push_back(make_atom(LinTerm::variable(v), RelOp::Le, LinTerm::constant(Rational(rng.range(0, 4)))));
      }
  (void)th;
  return c;
}

RandomSet random_clause_set(Rng& rng, Theory th) {
  RandomSet rs;
  long k = rng.range(1, 4);
  std::vector<Predicate> order;
  for (long i = 0; i < k; ++i) {
    Predicate p = "P" + std::to_string(i);
    rs.sig.emplace(p, static_cast<std::size_t>(rng.range(1, 2)));
    order.push_back(p);
  }
  rs.ord = Precedence(order);
  long m = rng.range(2, 5);
  for (long i = 1; i <= m; ++i) rs.clauses.push_back(random_clause(rng, rs.sig, th, static_cast<ClauseId>(i)));
  return rs;
}

SymbolicInterpretation random_interpretation(Rng& rng, const Signature& sig, Theory th) {
  SymbolicInterpretation s(sig);
  for (const auto& [p, n] : sig) {
    long r = rng.range(0, 9);
    if (r == 0) continue;
    if (r == 1) {
      s.set(p, Formula::top());
      continue;
    }
    s.set(p, random_formula(rng, canonical_vars(n), th, 2, 3, 4));
  }
  return s;
}

}  // namespace chc::testing
