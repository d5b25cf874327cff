#include <algorithm>

#include "chcmodel/la.hpp"

namespace chc {

namespace detail {
Var pick_elimination_variable(const Formula& f, const std::set<Var>& candidates);
}

namespace {

// Values of x worth trying on a formula whose only free variable is x. The
// set is complete: if any value satisfies the formula, one of these does.
std::vector<Rational> univariate_candidates(const Formula& f, const Var& x, Theory th) {
  std::vector<Atom> atoms;
  f.collect_atoms(atoms);
  std::vector<Rational> roots;
  Integer period = 1;
  for (const auto& a : atoms) {
    if (a.is_divisibility()) {
      period = lcm_of(period, a.modulus());
      continue;
    }
    Rational c = a.term().coeff(x);
    roots.push_back(-a.term().constant_term() / c);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  std::vector<Rational> out;
  if (is_integral_theory(th)) {
    const long d = period.get_si();
    for (long j = 0; j < d; ++j) out.emplace_back(j);
    for (const auto& r : roots) {
      Integer lo = floor_of(r) - period - 1;
      Integer hi = ceil_of(r) + period + 1;
      for (Integer v = lo; v <= hi; ++v) out.emplace_back(v);
    }
  } else {
    out.emplace_back(0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      out.push_back(roots[i]);
      if (i + 1 < roots.size()) out.push_back((roots[i] + roots[i + 1]) / 2);
    }
    if (!roots.empty()) {
      out.push_back(roots.front() - 1);
      out.push_back(roots.back() + 1);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    Rational aa = abs(a), ab = abs(b);
    return aa != ab ? aa < ab : a > b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> solve_univariate(const Formula& f, const Var& x, Theory th) {
  for (const auto& v : univariate_candidates(f, x, th))
    if (eval_formula(f, Assignment{{x, v}}, th)) return v;
  return std::nullopt;
}

void fill_missing(Assignment& a, const std::set<Var>& vars) {
  for (const auto& v : vars) a.emplace(v, Rational(0));
}

std::optional<Assignment> find_model_rec(const Formula& in, Theory th) {
  Formula f = tidy(in, th);
  if (f.is_true()) return Assignment{};
  if (f.is_false()) return std::nullopt;
  if (f.kind() == Formula::Kind::Or) {
    for (const auto& c : f.children()) {
      if (auto m = find_model_rec(c, th)) {
        fill_missing(*m, f.free_vars());
        return m;
      }
    }
    return std::nullopt;
  }
  if (f.kind() == Formula::Kind::And) {
    const auto& kids = f.children();
    auto split = std::find_if(kids.begin(), kids.end(), [](const Formula& k) { return k.kind() == Formula::Kind::Or; });
    if (split != kids.end()) {
      std::vector<Formula> others;
      for (auto it = kids.begin(); it != kids.end(); ++it)
        if (it != split) others.push_back(*it);
      for (const auto& d : split->children()) {
        std::vector<Formula> parts = others;
        parts.push_back(d);
        if (auto m = find_model_rec(Formula::conj(std::move(parts)), th)) {
          fill_missing(*m, f.free_vars());
          return m;
        }
      }
      return std::nullopt;
    }
  }
  Var x = detail::pick_elimination_variable(f, f.free_vars());
  Formula g = eliminate(x, f, th);
  auto w = find_model_rec(g, th);
  if (!w) return std::nullopt;
  Assignment rest = *w;
  for (const auto& v : f.free_vars())
    if (v != x) rest.emplace(v, Rational(0));
  Formula fx = instantiate(f, rest);
  auto value = solve_univariate(fx, x, th);
  if (!value) throw Error("internal: elimination result admits no extension for '" + x + "'");
  rest[x] = *value;
  return rest;
}

}  // namespace

std::optional<Assignment> find_model(const Formula& f, Theory th) {
  auto m = find_model_rec(f, th);
  if (m) {
    // Keep exactly the free variables of f.
    Assignment out;
    for (const auto& v : f.free_vars()) {
      auto it = m->find(v);
      out.emplace(v, it == m->end() ? Rational(0) : it->second);
    }
    return out;
  }
  return std::nullopt;
}

SatResult is_satisfiable(const Formula& f, Theory th) {
  auto m = find_model(f, th);
  if (!m) return {};
  return SatResult{true, std::move(*m)};
}

bool entails(const Formula& f, const Formula& g, Theory th) {
  return !find_model(Formula::conj(f, negate(g)), th).has_value();
}

bool equivalent(const Formula& f, const Formula& g, Theory th) { return entails(f, g, th) && entails(g, f, th); }

bool is_valid(const Formula& f, Theory th) { return !find_model(negate(f), th).has_value(); }

namespace {

constexpr std::size_t kSemanticAtomLimit = 24;
constexpr std::size_t kSemanticChildLimit = 12;

Formula simplify_rec(const Formula& f, Theory th) {
  if (f.kind() != Formula::Kind::And && f.kind() != Formula::Kind::Or) return f;
  bool is_and = f.kind() == Formula::Kind::And;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(simplify_rec(c, th));
  Formula cur = tidy(is_and ? Formula::conj(kids) : Formula::disj(kids), th);
  if (cur.kind() != Formula::Kind::And && cur.kind() != Formula::Kind::Or) return cur;
  if (cur.atom_count() > kSemanticAtomLimit) return cur;

  if (!find_model(cur, th)) return Formula::bottom();
  if (is_valid(cur, th)) return Formula::top();
  if (cur.children().size() > kSemanticChildLimit) return cur;

  kids = cur.children();
  is_and = cur.kind() == Formula::Kind::And;
  for (std::size_t i = 0; i < kids.size() && kids.size() > 1;) {
    std::vector<Formula> others;
    for (std::size_t j = 0; j < kids.size(); ++j)
      if (j != i) others.push_back(kids[j]);
    bool redundant = is_and ? entails(Formula::conj(others), kids[i], th)
                            : entails(kids[i], Formula::disj(others), th);
    if (redundant)
      kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
}

}  // namespace

Formula simplify(const Formula& f, Theory th) { return simplify_rec(tidy(f, th), th); }

std::optional<std::vector<Atom>> simplify_conjunction(const std::vector<Atom>& atoms, Theory th) {
  Formula f = tidy(conjunction_of(atoms), th);
  if (f.is_false() || !find_model(f, th)) return std::nullopt;
  std::vector<Atom> out;
  f.collect_atoms(out);
  if (out.size() <= 16) {
    for (std::size_t i = 0; i < out.size() && out.size() > 1;) {
      std::vector<Atom> others;
      for (std::size_t j = 0; j < out.size(); ++j)
        if (j != i) others.push_back(out[j]);
      if (entails(conjunction_of(others), Formula::atom(out[i]), th))
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      else
        ++i;
    }
  }
  return out;
}

}  // namespace chc
