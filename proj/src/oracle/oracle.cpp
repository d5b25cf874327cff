#include "chcmodel/oracle.hpp"

#include <algorithm>
#include <functional>

namespace chc {

namespace {

void require_lia(Theory th) {
  if (th != Theory::LIA) throw Error("the window oracle requires LIA");
}

void require_window(const Window& w) {
  if (w.lo > w.hi) throw Error("empty window");
}

struct Plan {
  const Clause* clause;
  std::vector<std::size_t> body;  // negative literal indices
  std::vector<Var> free;          // variables not bound by any body literal
  std::vector<Atom> atoms;
};

}  // namespace

const std::set<Tuple>& FiniteInterpretation::get(const Predicate& p) const {
  static const std::set<Tuple> empty;
  auto it = sets_.find(p);
  return it == sets_.end() ? empty : it->second;
}

bool FiniteInterpretation::contains(const Predicate& p, const Tuple& t) const { return get(p).count(t) != 0; }

std::size_t FiniteInterpretation::size() const {
  std::size_t n = 0;
  for (const auto& [p, s] : sets_) n += s.size();
  return n;
}

bool operator==(const FiniteInterpretation& a, const FiniteInterpretation& b) {
  for (const auto* m : {&a.sets_, &b.sets_})
    for (const auto& [p, s] : *m)
      if (a.get(p) != b.get(p)) return false;
  return true;
}

FiniteInterpretation tn_step(const std::vector<Clause>& n, const FiniteInterpretation& in, const Window& w,
                             Theory th) {
  require_lia(th);
  require_window(w);
  FiniteInterpretation out;
  for (const auto& c : n) {
    auto pos = c.positive_index();
    if (!pos) continue;
    if (c.constraint_formula().is_false()) continue;
    Plan plan{&c, {}, {}, {}};
    std::set<Var> bound;
    for (std::size_t i = 0; i < c.literals.size(); ++i)
      if (!c.literals[i].positive) {
        plan.body.push_back(i);
        bound.insert(c.literals[i].atom.args.begin(), c.literals[i].atom.args.end());
      }
    for (const auto& v : c.vars())
      if (!bound.count(v)) plan.free.push_back(v);
    for (const auto& f : c.constraint) f.collect_atoms(plan.atoms);

    Assignment a;
    auto emit = [&] {
      for (const auto& atom : plan.atoms)
        if (!atom.holds(a)) return;
      Tuple t;
      for (const auto& v : c.literals[*pos].atom.args) t.push_back(a.at(v).get_num().get_si());
      out.insert(c.literals[*pos].atom.predicate, std::move(t));
    };
    std::function<void(std::size_t)> free_vars = [&](std::size_t k) {
      if (k == plan.free.size()) return emit();
      for (long long v = w.lo; v <= w.hi; ++v) {
        a[plan.free[k]] = Rational(static_cast<long>(v));
        free_vars(k + 1);
      }
      a.erase(plan.free[k]);
    };
    std::function<void(std::size_t)> join = [&](std::size_t k) {
      if (k == plan.body.size()) return free_vars(0);
      const FOAtom& atom = c.literals[plan.body[k]].atom;
      for (const auto& t : in.get(atom.predicate)) {
        Assignment saved = a;
        bool ok = true;
        for (std::size_t j = 0; j < atom.args.size() && ok; ++j) {
          Rational val(static_cast<long>(t[j]));
          auto [it, inserted] = a.emplace(atom.args[j], val);
          if (!inserted && it->second != val) ok = false;
        }
        if (ok) join(k + 1);
        a = std::move(saved);
      }
    };
    join(0);
  }
  return out;
}

LfpResult tn_lfp(const std::vector<Clause>& n, const Window& w, Theory th, std::size_t max_steps) {
  LfpResult r;
  while (r.steps < max_steps) {
    FiniteInterpretation next = tn_step(n, r.interp, w, th);
    ++r.steps;
    if (next == r.interp) {
      r.reached = true;
      return r;
    }
    r.interp = std::move(next);
  }
  return r;
}

FiniteInterpretation restrict_model(const SymbolicInterpretation& s, const Window& w, Theory th) {
  require_lia(th);
  require_window(w);
  FiniteInterpretation out;
  for (const auto& [p, arity] : s.signature()) {
    Tuple t(arity, w.lo);
    std::vector<Rational> args(arity);
    while (true) {
      for (std::size_t i = 0; i < arity; ++i) args[i] = Rational(static_cast<long>(t[i]));
      if (s.holds(p, args, th)) out.insert(p, t);
      std::size_t i = 0;
      while (i < arity && t[i] == w.hi) t[i++] = w.lo;
      if (i == arity) break;
      ++t[i];
    }
  }
  return out;
}

FiniteInterpretation restrict_interp(const FiniteInterpretation& f, const Window& w) {
  FiniteInterpretation out;
  for (const auto& [p, set] : f.sets())
    for (const auto& t : set)
      if (std::all_of(t.begin(), t.end(), [&](long long v) { return v >= w.lo && v <= w.hi; })) out.insert(p, t);
  return out;
}

bool is_window_closed(const std::vector<Clause>& n, const Window& w, Theory th) {
  auto inner = tn_lfp(n, w, th);
  auto outer = tn_lfp(n, Window{w.lo - 1, w.hi + 1}, th);
  return inner.reached && outer.reached && restrict_interp(outer.interp, w) == inner.interp;
}

LeastCheck check_least(const std::vector<Clause>& n, const SymbolicInterpretation& s, const Window& w, Theory th) {
  LeastCheck r;
  r.lfp = tn_lfp(n, w, th);
  if (!r.lfp.reached) throw Error("window fixpoint not reached within the step limit");
  FiniteInterpretation sym = restrict_model(s, w, th);
  std::set<Predicate> preds;
  for (const auto& [p, a] : s.signature()) preds.insert(p);
  for (const auto& [p, set] : r.lfp.interp.sets()) preds.insert(p);
  for (const auto& p : preds) {
    for (const auto& t : sym.get(p))
      if (!r.lfp.interp.contains(p, t)) r.differences.push_back({p, t, true});
    for (const auto& t : r.lfp.interp.get(p))
      if (!sym.contains(p, t)) r.differences.push_back({p, t, false});
  }
  r.agree = r.differences.empty();
  return r;
}

}  // namespace chc
