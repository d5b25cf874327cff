#include "chcmodel/formula.hpp"

#include <algorithm>
#include <optional>

namespace chc {

struct Formula::Node {
  Kind kind;
  std::optional<chc::Atom> atom;
  std::vector<Formula> kids;
  std::set<Var> vars;
};

namespace {

const std::shared_ptr<const Formula::Node>& true_node() {
  static const auto n = std::make_shared<const Formula::Node>(Formula::Node{Formula::Kind::True, {}, {}, {}});
  return n;
}

const std::shared_ptr<const Formula::Node>& false_node() {
  static const auto n = std::make_shared<const Formula::Node>(Formula::Node{Formula::Kind::False, {}, {}, {}});
  return n;
}

Integer integer_lcm_of_denominators(const LinTerm& t) {
  Integer l = t.constant_term().get_den();
  for (const auto& [v, c] : t.coeffs()) l = lcm_of(l, c.get_den());
  return l;
}

Integer gcd_of_numerators(const LinTerm& t) {
  Integer g = abs(t.constant_term().get_num());
  for (const auto& [v, c] : t.coeffs()) g = gcd_of(g, c.get_num());
  return g;
}

bool ground_holds(Rel rel, const Rational& v, const Integer& m) {
  switch (rel) {
    case Rel::Le: return v <= 0;
    case Rel::Lt: return v < 0;
    case Rel::Eq: return v == 0;
    case Rel::Ne: return v != 0;
    case Rel::Div: return is_integer(v) && mod_of(v.get_num(), m) == 0;
    case Rel::NDiv: return !(is_integer(v) && mod_of(v.get_num(), m) == 0);
  }
  return false;
}

int rel_rank(Rel r) { return static_cast<int>(r); }

}  // namespace

bool operator<(const Atom& a, const Atom& b) {
  if (a.rel_ != b.rel_) return rel_rank(a.rel_) < rel_rank(b.rel_);
  if (a.modulus_ != b.modulus_) return a.modulus_ < b.modulus_;
  return a.term_ < b.term_;
}

Atom Atom::complement() const {
  switch (rel_) {
    case Rel::Le: return Atom(-term_, Rel::Lt, 0);
    case Rel::Lt: return Atom(-term_, Rel::Le, 0);
    case Rel::Eq: return Atom(term_, Rel::Ne, 0);
    case Rel::Ne: return Atom(term_, Rel::Eq, 0);
    case Rel::Div: return Atom(term_, Rel::NDiv, modulus_);
    case Rel::NDiv: return Atom(term_, Rel::Div, modulus_);
  }
  return *this;
}

bool Atom::holds(const Assignment& a) const { return ground_holds(rel_, term_.evaluate(a), modulus_); }

Formula make_atom(LinTerm t, Rel rel, const Integer& modulus) {
  if (rel == Rel::Div || rel == Rel::NDiv) {
    Integer m = abs(modulus);
    if (m == 0) throw Error("divisibility atom with zero modulus");
    for (const auto& [v, c] : t.coeffs())
      if (!is_integer(c)) throw Error("divisibility atom with fractional coefficient");
    if (!is_integer(t.constant_term())) {
      // m | t can never hold for a non-integer constant offset of an integer sum.
      return rel == Rel::Div ? Formula::bottom() : Formula::top();
    }
    LinTerm r = LinTerm::constant(Rational(mod_of(t.constant_term().get_num(), m)));
    for (const auto& [v, c] : t.coeffs()) r.add_term(v, Rational(mod_of(c.get_num(), m)));
    if (r.is_constant()) {
      bool h = r.constant_term() == 0;
      return (rel == Rel::Div) == h ? Formula::top() : Formula::bottom();
    }
    Integer g = m;
    for (const auto& [v, c] : r.coeffs()) g = gcd_of(g, c.get_num());
    if (mod_of(r.constant_term().get_num(), g) != 0) return rel == Rel::Div ? Formula::bottom() : Formula::top();
    if (g != 1) {
      r *= Rational(1, 1) / Rational(g);
      m /= g;
    }
    if (m == 1) return rel == Rel::Div ? Formula::top() : Formula::bottom();
    return Formula::atom(Atom(std::move(r), rel, m));
  }

  if (t.is_constant()) return ground_holds(rel, t.constant_term(), 0) ? Formula::top() : Formula::bottom();
  Integer l = integer_lcm_of_denominators(t);
  if (l != 1) t *= Rational(l);
  Integer g = gcd_of_numerators(t);
  if (g != 1) t *= Rational(1) / Rational(g);
  if ((rel == Rel::Eq || rel == Rel::Ne) && t.coeffs().begin()->second < 0) t = -t;
  return Formula::atom(Atom(std::move(t), rel, 0));
}

Formula make_atom(const LinTerm& lhs, RelOp op, const LinTerm& rhs) {
  switch (op) {
    case RelOp::Le: return make_atom(lhs - rhs, Rel::Le);
    case RelOp::Lt: return make_atom(lhs - rhs, Rel::Lt);
    case RelOp::Eq: return make_atom(lhs - rhs, Rel::Eq);
    case RelOp::Ne: return make_atom(lhs - rhs, Rel::Ne);
    case RelOp::Ge: return make_atom(rhs - lhs, Rel::Le);
    case RelOp::Gt: return make_atom(rhs - lhs, Rel::Lt);
  }
  return Formula::top();
}

Formula make_divides(const Integer& m, const LinTerm& t) { return make_atom(t, Rel::Div, m); }

Formula::Formula() : node_(true_node()) {}
Formula Formula::top() { return Formula(true_node()); }
Formula Formula::bottom() { return Formula(false_node()); }

Formula Formula::atom(const chc::Atom& a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, a, {}, a.vars()}));
}

namespace {

bool contains(const std::vector<Formula>& v, const Formula& f) {
  return std::find(v.begin(), v.end(), f) != v.end();
}

// Shared flattening for conj/disj. `unit` is the neutral element, `zero`
// the absorbing one.
std::vector<Formula> flatten(std::vector<Formula> parts, Formula::Kind self, Formula::Kind unit,
                             Formula::Kind zero, bool& absorbed) {
  std::vector<Formula> out;
  out.reserve(parts.size());
  absorbed = false;
  auto push = [&](const Formula& f) {
    if (f.kind() == unit) return;
    if (f.kind() == zero) {
      absorbed = true;
      return;
    }
    if (f.kind() == Formula::Kind::Atom) {
      for (const auto& o : out)
        if (o.kind() == Formula::Kind::Atom && o.as_atom() == f.as_atom().complement()) {
          absorbed = true;
          return;
        }
    }
    if (!contains(out, f)) out.push_back(f);
  };
  for (auto& p : parts) {
    if (absorbed) break;
    if (p.kind() == self)
      for (const auto& c : p.children()) push(c);
    else
      push(p);
  }
  return out;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> parts) {
  bool absorbed = false;
  auto kids = flatten(std::move(parts), Kind::And, Kind::True, Kind::False, absorbed);
  if (absorbed) return bottom();
  if (kids.empty()) return top();
  if (kids.size() == 1) return kids.front();
  std::set<Var> vs;
  for (const auto& k : kids) {
    const auto& kv = k.free_vars();
    vs.insert(kv.begin(), kv.end());
  }
  return Formula(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::move(kids), std::move(vs)}));
}

Formula Formula::disj(std::vector<Formula> parts) {
  bool absorbed = false;
  auto kids = flatten(std::move(parts), Kind::Or, Kind::False, Kind::True, absorbed);
  if (absorbed) return top();
  if (kids.empty()) return bottom();
  if (kids.size() == 1) return kids.front();
  std::set<Var> vs;
  for (const auto& k : kids) {
    const auto& kv = k.free_vars();
    vs.insert(kv.begin(), kv.end());
  }
  return Formula(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::move(kids), std::move(vs)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom& Formula::as_atom() const {
  if (node_->kind != Kind::Atom) throw Error("formula is not an atom");
  return *node_->atom;
}

const std::vector<Formula>& Formula::children() const { return node_->kids; }

const std::set<Var>& Formula::free_vars() const { return node_->vars; }

bool Formula::mentions(const Var& v) const { return node_->vars.count(v) != 0; }

std::size_t Formula::atom_count() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False: return 0;
    case Kind::Atom: return 1;
    default: break;
  }
  std::size_t n = 0;
  for (const auto& c : children()) n += c.atom_count();
  return n;
}

void Formula::collect_atoms(std::vector<chc::Atom>& out) const {
  if (kind() == Kind::Atom) {
    out.push_back(as_atom());
    return;
  }
  for (const auto& c : children()) c.collect_atoms(out);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Atom: return *a.node_->atom == *b.node_->atom;
    default: break;
  }
  if (a.node_->vars != b.node_->vars) return false;
  return a.children() == b.children();
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return Formula::bottom();
    case Formula::Kind::False: return Formula::top();
    case Formula::Kind::Atom: return Formula::atom(f.as_atom().complement());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(negate(c));
      return f.kind() == Formula::Kind::And ? Formula::disj(std::move(kids)) : Formula::conj(std::move(kids));
    }
  }
  return f;
}

Formula implies(const Formula& a, const Formula& b) { return Formula::disj(negate(a), b); }

Formula substitute(const Formula& f, const Var& v, const LinTerm& t) {
  if (!f.mentions(v)) return f;
  return map_atoms(f, [&](const Atom& a) {
    if (!a.term().has_var(v)) return Formula::atom(a);
    return make_atom(a.term().substitute(v, t), a.rel(), a.modulus());
  });
}

Formula substitute(const Formula& f, const std::map<Var, LinTerm>& s) {
  return map_atoms(f, [&](const Atom& a) { return make_atom(a.term().substitute(s), a.rel(), a.modulus()); });
}

Formula rename(const Formula& f, const std::map<Var, Var>& r) {
  std::map<Var, LinTerm> s;
  for (const auto& [from, to] : r) s.emplace(from, LinTerm::variable(to));
  return substitute(f, s);
}

Formula instantiate(const Formula& f, const Assignment& a) {
  std::map<Var, LinTerm> s;
  for (const auto& v : f.free_vars()) {
    auto it = a.find(v);
    if (it != a.end()) s.emplace(v, LinTerm::constant(it->second));
  }
  if (s.empty()) return f;
  return substitute(f, s);
}

namespace {

bool eval_unchecked(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return f.as_atom().holds(a);
    case Formula::Kind::And:
      for (const auto& c : f.children())
        if (!eval_unchecked(c, a)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children())
        if (eval_unchecked(c, a)) return true;
      return false;
  }
  return false;
}

}  // namespace

bool eval_formula(const Formula& f, const Assignment& a, Theory th) {
  for (const auto& v : f.free_vars()) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable '" + v + "'");
    if (is_integral_theory(th) && !is_integer(it->second))
      throw Error("non-integer value for '" + v + "' under LIA");
  }
  return eval_unchecked(f, a);
}

namespace {

Formula normalize_lia_atom(const Atom& a) {
  switch (a.rel()) {
    case Rel::Div:
    case Rel::NDiv: return Formula::atom(a);
    case Rel::Lt: {
      LinTerm t = a.term();
      t.add_constant(1);
      return normalize_lia_atom(make_atom(t, Rel::Le).as_atom());
    }
    default: break;
  }
  Integer g = 0;
  for (const auto& [v, c] : a.term().coeffs()) g = gcd_of(g, c.get_num());
  if (g == 1) return Formula::atom(a);
  const Integer k = a.term().constant_term().get_num();
  switch (a.rel()) {
    case Rel::Eq: return Formula::bottom();
    case Rel::Ne: return Formula::top();
    case Rel::Le: {
      LinTerm t = a.term() * (Rational(1) / Rational(g));
      // sum(c/g x) + k/g <= 0  <=>  sum(c/g x) + ceil(k/g) <= 0
      t.add_constant(-t.constant_term());
      t.add_constant(Rational(ceil_of(make_rational(k, g))));
      return make_atom(t, Rel::Le);
    }
    default: return Formula::atom(a);
  }
}

}  // namespace

Formula normalize_for(const Formula& f, Theory th) {
  if (!is_integral_theory(th)) return f;
  return map_atoms(f, [](const Atom& a) { return normalize_lia_atom(a); });
}

}  // namespace chc
