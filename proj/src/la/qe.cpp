#include <algorithm>
#include <map>

#include "chcmodel/la.hpp"

namespace chc {

namespace {

// ---------------------------------------------------------------------------
// tidy

// A Le/Lt atom read as  v <= bound  (or <), where v is the variable part.
struct Bound {
  Rational bound;
  bool strict;
};

Bound as_upper(const Atom& a) { return Bound{-a.term().constant_term(), a.rel() == Rel::Lt}; }

std::map<Var, Rational> negated(const std::map<Var, Rational>& m) {
  std::map<Var, Rational> out;
  for (const auto& [v, c] : m) out.emplace(v, -c);
  return out;
}

bool is_inequality(const Formula& f) {
  return f.kind() == Formula::Kind::Atom && (f.as_atom().rel() == Rel::Le || f.as_atom().rel() == Rel::Lt);
}

// Merges bounds over identical linear forms among the atom children of one
// And/Or node. Returns nullopt when the node collapses to its absorbing
// constant.
std::optional<std::vector<Formula>> merge_bounds(const std::vector<Formula>& kids, bool is_and, Theory th) {
  std::vector<Formula> out;
  std::map<std::map<Var, Rational>, std::size_t> slot;
  for (const auto& k : kids) {
    if (!is_inequality(k)) {
      out.push_back(k);
      continue;
    }
    const auto& key = k.as_atom().term().coeffs();
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, out.size());
      out.push_back(k);
      continue;
    }
    Bound a = as_upper(out[it->second].as_atom());
    Bound b = as_upper(k.as_atom());
    bool b_tighter = b.bound < a.bound || (b.bound == a.bound && b.strict && !a.strict);
    if (is_and == b_tighter) out[it->second] = k;
  }
  for (const auto& [key, idx] : slot) {
    auto opp = slot.find(negated(key));
    if (opp == slot.end() || opp->second < idx) continue;
    // v <= hi  and  -v <= -lo, i.e. v >= lo
    Bound up = as_upper(out[idx].as_atom());
    Bound lo_raw = as_upper(out[opp->second].as_atom());
    Rational lo = -lo_raw.bound;
    bool any_strict = up.strict || lo_raw.strict;
    if (is_and) {
      if (lo > up.bound || (lo == up.bound && any_strict)) return std::nullopt;
    } else {
      bool both_strict = up.strict && lo_raw.strict;
      if (lo < up.bound || (lo == up.bound && !both_strict)) return std::nullopt;
      if (is_integral_theory(th) && lo == up.bound + 1) return std::nullopt;
    }
  }
  if (is_and) {
    // Two equalities over one linear form with different constants.
    std::map<std::map<Var, Rational>, Rational> eqs;
    for (const auto& k : out) {
      if (k.kind() != Formula::Kind::Atom || k.as_atom().rel() != Rel::Eq) continue;
      auto [it, inserted] = eqs.emplace(k.as_atom().term().coeffs(), k.as_atom().term().constant_term());
      if (!inserted && it->second != k.as_atom().term().constant_term()) return std::nullopt;
    }
  }
  return out;
}

Formula tidy_rec(const Formula& f, Theory th) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return f;
    default: break;
  }
  bool is_and = f.kind() == Formula::Kind::And;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(tidy_rec(c, th));
  // Re-flatten first so merged bounds see every sibling.
  Formula flat = is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
  if (flat.kind() != f.kind()) return flat;
  auto merged = merge_bounds(flat.children(), is_and, th);
  if (!merged) return is_and ? Formula::bottom() : Formula::top();
  return is_and ? Formula::conj(std::move(*merged)) : Formula::disj(std::move(*merged));
}

// ---------------------------------------------------------------------------
// Shared helpers for elimination

// Coefficient of x and the rest of an atom's term.
struct Split {
  Rational coeff;
  LinTerm rest;
};

Split split_on(const Atom& a, const Var& x) { return Split{a.term().coeff(x), a.term().without(x)}; }

void collect_atoms_with(const Formula& f, const Var& x, std::vector<Atom>& out) {
  if (!f.mentions(x)) return;
  if (f.kind() == Formula::Kind::Atom) {
    if (std::find(out.begin(), out.end(), f.as_atom()) == out.end()) out.push_back(f.as_atom());
    return;
  }
  for (const auto& c : f.children()) collect_atoms_with(c, x, out);
}

// The bound term t with  x = t  solving  c*x + rest = 0.
LinTerm solve_for(const Split& s) { return s.rest * (Rational(-1) / s.coeff); }

// ---------------------------------------------------------------------------
// Fourier-Motzkin on a conjunction of Le/Lt/Eq atoms (LRA, LQA).

Formula fourier_motzkin(const Var& x, const std::vector<Formula>& atoms) {
  struct Side {
    LinTerm t;
    bool strict;
  };
  std::vector<Side> lowers, uppers;
  for (const auto& f : atoms) {
    const Atom& a = f.as_atom();
    Split s = split_on(a, x);
    LinTerm t = solve_for(s);
    bool strict = a.rel() == Rel::Lt;
    if (s.coeff > 0)
      uppers.push_back({t, strict});
    else
      lowers.push_back({t, strict});
  }
  std::vector<Formula> out;
  for (const auto& lo : lowers)
    for (const auto& up : uppers)
      out.push_back(make_atom(lo.t - up.t, (lo.strict || up.strict) ? Rel::Lt : Rel::Le));
  return Formula::conj(std::move(out));
}

// ---------------------------------------------------------------------------
// Loos-Weispfenning virtual substitution (LRA, LQA).

enum class Eps { None, Plus, Minus };

struct TestPoint {
  LinTerm t;
  Eps eps;
  friend bool operator==(const TestPoint& a, const TestPoint& b) { return a.eps == b.eps && a.t == b.t; }
};

// Substitute x := t + eps (eps infinitesimal of the given sign).
Formula substitute_point(const Formula& f, const Var& x, const TestPoint& p) {
  if (p.eps == Eps::None) return substitute(f, x, p.t);
  return map_atoms(f, [&](const Atom& a) -> Formula {
    if (!a.term().has_var(x)) return Formula::atom(a);
    Split s = split_on(a, x);
    LinTerm val = s.rest + p.t * s.coeff;  // value at t; derivative sign is sign(coeff * eps)
    bool rising = (s.coeff > 0) == (p.eps == Eps::Plus);
    switch (a.rel()) {
      case Rel::Eq: return Formula::bottom();
      case Rel::Ne: return Formula::top();
      case Rel::Le:
      case Rel::Lt: return make_atom(val, rising ? Rel::Lt : Rel::Le);
      default: throw Error("divisibility atom in rational elimination");
    }
  });
}

// Substitute x := -infinity (toward_minus) or +infinity.
Formula substitute_infinity(const Formula& f, const Var& x, bool toward_minus) {
  return map_atoms(f, [&](const Atom& a) -> Formula {
    if (!a.term().has_var(x)) return Formula::atom(a);
    Rational c = a.term().coeff(x);
    bool term_to_minus = (c > 0) == toward_minus;
    switch (a.rel()) {
      case Rel::Eq: return Formula::bottom();
      case Rel::Ne: return Formula::top();
      case Rel::Le:
      case Rel::Lt: return term_to_minus ? Formula::top() : Formula::bottom();
      default: throw Error("divisibility atom in rational elimination");
    }
  });
}

Formula loos_weispfenning(const Var& x, const Formula& f, Theory th) {
  std::vector<Atom> atoms;
  collect_atoms_with(f, x, atoms);
  std::vector<TestPoint> lower, upper;
  auto add = [](std::vector<TestPoint>& v, TestPoint p) {
    if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(std::move(p));
  };
  for (const auto& a : atoms) {
    Split s = split_on(a, x);
    LinTerm t = solve_for(s);
    switch (a.rel()) {
      case Rel::Eq:
        add(lower, {t, Eps::None});
        add(upper, {t, Eps::None});
        break;
      case Rel::Ne:
        add(lower, {t, Eps::Plus});
        add(upper, {t, Eps::Minus});
        break;
      case Rel::Le:
        add(s.coeff < 0 ? lower : upper, {t, Eps::None});
        break;
      case Rel::Lt:
        if (s.coeff < 0)
          add(lower, {t, Eps::Plus});
        else
          add(upper, {t, Eps::Minus});
        break;
      default: throw Error("divisibility atom in rational elimination");
    }
  }
  bool use_lower = lower.size() <= upper.size();
  const auto& points = use_lower ? lower : upper;
  std::vector<Formula> out;
  out.push_back(tidy(substitute_infinity(f, x, use_lower), th));
  for (const auto& p : points) {
    if (out.back().is_true()) break;
    out.push_back(tidy(substitute_point(f, x, p), th));
  }
  return Formula::disj(std::move(out));
}

// ---------------------------------------------------------------------------
// Cooper's method (LIA).

Integer integer_coeff(const Atom& a, const Var& x) { return a.term().coeff(x).get_num(); }

Formula cooper(const Var& x, const Formula& f, Theory th) {
  std::vector<Atom> atoms;
  collect_atoms_with(f, x, atoms);
  Integer l = 1;
  for (const auto& a : atoms) l = lcm_of(l, abs(integer_coeff(a, x)));

  // Scale every atom so x has coefficient +-l, then read l*x as x.
  Formula scaled = map_atoms(f, [&](const Atom& a) -> Formula {
    if (!a.term().has_var(x)) return Formula::atom(a);
    Integer c = integer_coeff(a, x);
    Integer k = l / abs(c);
    LinTerm t = a.term().without(x) * Rational(k);
    t.add_term(x, c > 0 ? 1 : -1);
    return make_atom(t, a.rel(), a.modulus() * k);
  });
  if (l > 1) scaled = Formula::conj(scaled, make_divides(l, LinTerm::variable(x)));

  // A top-level equality fixes x outright.
  std::vector<Formula> top_level =
      scaled.kind() == Formula::Kind::And ? scaled.children() : std::vector<Formula>{scaled};
  for (const auto& k : top_level) {
    if (k.kind() != Formula::Kind::Atom || k.as_atom().rel() != Rel::Eq || !k.mentions(x)) continue;
    LinTerm t = solve_for(split_on(k.as_atom(), x));
    return tidy(substitute(scaled, x, t), th);
  }

  // Only Le and divisibility atoms may mention x from here on.
  Formula body = map_atoms(scaled, [&](const Atom& a) -> Formula {
    if (!a.term().has_var(x)) return Formula::atom(a);
    if (a.rel() == Rel::Eq)
      return Formula::conj(make_atom(a.term(), Rel::Le), make_atom(-a.term(), Rel::Le));
    if (a.rel() == Rel::Ne) {
      LinTerm up = a.term(), down = -a.term();
      up.add_constant(1);
      down.add_constant(1);
      return Formula::disj(make_atom(up, Rel::Le), make_atom(down, Rel::Le));
    }
    return Formula::atom(a);
  });
  body = tidy(body, th);
  if (!body.mentions(x)) return body;

  atoms.clear();
  collect_atoms_with(body, x, atoms);
  Integer delta = 1;
  std::vector<LinTerm> lowers, uppers;  // b with b < x ; a with x < a
  for (const auto& a : atoms) {
    if (a.is_divisibility()) {
      delta = lcm_of(delta, a.modulus());
      continue;
    }
    if (a.rel() != Rel::Le) throw Error("unexpected relation in Cooper elimination");
    LinTerm rest = a.term().without(x);
    if (a.term().coeff(x) > 0) {
      // x + rest <= 0  <=>  x < -rest + 1
      LinTerm up = -rest;
      up.add_constant(1);
      if (std::find(uppers.begin(), uppers.end(), up) == uppers.end()) uppers.push_back(up);
    } else {
      // -x + rest <= 0  <=>  rest - 1 < x
      LinTerm lo = rest;
      lo.add_constant(-1);
      if (std::find(lowers.begin(), lowers.end(), lo) == lowers.end()) lowers.push_back(lo);
    }
  }

  bool use_lower = lowers.size() <= uppers.size();
  Formula at_infinity = map_atoms(body, [&](const Atom& a) -> Formula {
    if (!a.term().has_var(x) || a.is_divisibility()) return Formula::atom(a);
    bool is_upper = a.term().coeff(x) > 0;
    return (is_upper == use_lower) ? Formula::top() : Formula::bottom();
  });

  std::vector<Formula> out;
  const long steps = delta.get_si();
  for (long j = 1; j <= steps; ++j) {
    Rational offset = use_lower ? Rational(j) : Rational(-j);
    out.push_back(tidy(substitute(at_infinity, x, LinTerm::constant(offset)), th));
    if (out.back().is_true()) return out.back();
  }
  for (const auto& b : (use_lower ? lowers : uppers)) {
    for (long j = 1; j <= steps; ++j) {
      LinTerm point = b;
      point.add_constant(use_lower ? Rational(j) : Rational(-j));
      out.push_back(tidy(substitute(body, x, point), th));
      if (out.back().is_true()) return out.back();
    }
  }
  return Formula::disj(std::move(out));
}

Formula eliminate_rec(const Var& x, const Formula& f, Theory th);

Formula eliminate_conjunction(const Var& x, const std::vector<Formula>& kids, Theory th) {
  std::vector<Formula> rest, with_x;
  for (const auto& k : kids) (k.mentions(x) ? with_x : rest).push_back(k);
  if (with_x.empty()) return Formula::conj(kids);

  for (auto& k : with_x)
    if (k.kind() == Formula::Kind::Atom && k.as_atom().rel() == Rel::Ne)
      k = tidy(Formula::disj(make_atom(k.as_atom().term(), Rel::Lt), make_atom(-k.as_atom().term(), Rel::Lt)), th);

  // Distribute over the first disjunction mentioning x.
  auto split = std::find_if(with_x.begin(), with_x.end(), [](const Formula& k) { return k.kind() == Formula::Kind::Or; });
  if (split != with_x.end()) {
    Formula choice = *split;
    with_x.erase(split);
    std::vector<Formula> branches;
    for (const auto& d : choice.children()) {
      std::vector<Formula> parts = with_x;
      parts.push_back(d);
      branches.push_back(tidy(eliminate_rec(x, tidy(Formula::conj(std::move(parts)), th), th), th));
      if (branches.back().is_true()) break;
    }
    rest.push_back(Formula::disj(std::move(branches)));
    return Formula::conj(std::move(rest));
  }

  if (is_integral_theory(th)) {
    rest.push_back(cooper(x, Formula::conj(with_x), th));
    return Formula::conj(std::move(rest));
  }

  for (const auto& k : with_x) {
    if (k.kind() == Formula::Kind::Atom && k.as_atom().rel() == Rel::Eq) {
      LinTerm t = solve_for(split_on(k.as_atom(), x));
      rest.push_back(tidy(substitute(Formula::conj(with_x), x, t), th));
      return Formula::conj(std::move(rest));
    }
  }
  bool plain = std::all_of(with_x.begin(), with_x.end(), [](const Formula& k) {
    return k.kind() == Formula::Kind::Atom && (k.as_atom().rel() == Rel::Le || k.as_atom().rel() == Rel::Lt);
  });
  if (plain)
    rest.push_back(fourier_motzkin(x, with_x));
  else
    rest.push_back(loos_weispfenning(x, Formula::conj(with_x), th));
  return Formula::conj(std::move(rest));
}

Formula eliminate_rec(const Var& x, const Formula& f, Theory th) {
  if (!f.mentions(x)) return f;
  switch (f.kind()) {
    case Formula::Kind::Or: {
      std::vector<Formula> out;
      for (const auto& c : f.children()) {
        out.push_back(eliminate_rec(x, c, th));
        if (out.back().is_true()) return out.back();
      }
      return Formula::disj(std::move(out));
    }
    case Formula::Kind::And: return eliminate_conjunction(x, f.children(), th);
    case Formula::Kind::Atom: return eliminate_conjunction(x, {f}, th);
    default: return f;
  }
}

// Cheapest variable first: one with a unit-coefficient equality, else the
// one occurring in the fewest atoms.
Var pick_variable(const Formula& f, const std::set<Var>& candidates) {
  std::vector<Atom> atoms;
  f.collect_atoms(atoms);
  std::map<Var, std::size_t> count;
  std::set<Var> unit_eq;
  for (const auto& a : atoms)
    for (const auto& [v, c] : a.term().coeffs()) {
      if (!candidates.count(v)) continue;
      ++count[v];
      if (a.rel() == Rel::Eq && abs(c) == 1) unit_eq.insert(v);
    }
  if (!unit_eq.empty()) return *unit_eq.begin();
  Var best = *candidates.begin();
  std::size_t best_n = SIZE_MAX;
  for (const auto& v : candidates) {
    std::size_t n = count[v];
    if (n < best_n) {
      best = v;
      best_n = n;
    }
  }
  return best;
}

}  // namespace

Formula tidy(const Formula& f, Theory th) { return tidy_rec(normalize_for(f, th), th); }

Formula conjunction_of(const std::vector<Atom>& atoms) {
  std::vector<Formula> parts;
  parts.reserve(atoms.size());
  for (const auto& a : atoms) parts.push_back(Formula::atom(a));
  return Formula::conj(std::move(parts));
}

Formula eliminate(const Var& x, const Formula& f, Theory th) { return tidy(eliminate_rec(x, tidy(f, th), th), th); }

namespace detail {
Formula project_raw(const std::set<Var>& keep, const Formula& f, Theory th) {
  Formula cur = tidy(f, th);
  for (;;) {
    std::set<Var> todo;
    for (const auto& v : cur.free_vars())
      if (!keep.count(v)) todo.insert(v);
    if (todo.empty()) return cur;
    cur = eliminate(pick_variable(cur, todo), cur, th);
  }
}

Var pick_elimination_variable(const Formula& f, const std::set<Var>& candidates) {
  return pick_variable(f, candidates);
}
}  // namespace detail

Formula project(const std::set<Var>& keep, const Formula& f, Theory th) {
  return simplify(detail::project_raw(keep, f, th), th);
}

}  // namespace chc
