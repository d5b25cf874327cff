#include "chcmodel/core.hpp"

#include <algorithm>

namespace chc {

Substitution Substitution::renaming(const std::map<Var, Var>& r) {
  Substitution s;
  for (const auto& [from, to] : r)
    if (from != to) s.map_.emplace(from, to);
  return s;
}

void Substitution::bind(const Var& v, Image img) {
  if (auto* w = std::get_if<Var>(&img); w && *w == v) {
    map_.erase(v);
    return;
  }
  map_[v] = std::move(img);
}

bool Substitution::is_idempotent() const {
  for (const auto& [v, img] : map_)
    if (auto* w = std::get_if<Var>(&img); w && map_.count(*w)) return false;
  return true;
}

Var Substitution::apply_var(const Var& v) const {
  auto it = map_.find(v);
  if (it == map_.end()) return v;
  if (auto* w = std::get_if<Var>(&it->second)) return *w;
  throw Error("first-order argument '" + v + "' cannot be bound to a number");
}

LinTerm Substitution::apply(const LinTerm& t) const {
  std::map<Var, LinTerm> s;
  for (const auto& [v, img] : map_) {
    if (!t.has_var(v)) continue;
    if (auto* w = std::get_if<Var>(&img))
      s.emplace(v, LinTerm::variable(*w));
    else
      s.emplace(v, LinTerm::constant(std::get<Rational>(img)));
  }
  return s.empty() ? t : t.substitute(s);
}

Formula Substitution::apply(const Formula& f) const {
  std::map<Var, LinTerm> s;
  for (const auto& [v, img] : map_) {
    if (!f.mentions(v)) continue;
    if (auto* w = std::get_if<Var>(&img))
      s.emplace(v, LinTerm::variable(*w));
    else
      s.emplace(v, LinTerm::constant(std::get<Rational>(img)));
  }
  return s.empty() ? f : substitute(f, s);
}

FOAtom Substitution::apply(const FOAtom& a) const {
  FOAtom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& v : a.args) out.args.push_back(apply_var(v));
  return out;
}

Literal Substitution::apply(const Literal& l) const { return Literal{l.positive, apply(l.atom)}; }

std::optional<std::size_t> Clause::positive_index() const {
  for (std::size_t i = 0; i < literals.size(); ++i)
    if (literals[i].positive) return i;
  return std::nullopt;
}

std::size_t Clause::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(literals.begin(), literals.end(), [](const Literal& l) { return l.positive; }));
}

std::set<Var> Clause::vars() const {
  std::set<Var> out = fo_vars();
  for (const auto& f : constraint) out.insert(f.free_vars().begin(), f.free_vars().end());
  return out;
}

std::set<Var> Clause::fo_vars() const {
  std::set<Var> out;
  for (const auto& l : literals) out.insert(l.atom.args.begin(), l.atom.args.end());
  return out;
}

std::string clause_name(ClauseId id) { return "C" + std::to_string(id); }

Clause apply_substitution(const Clause& c, const Substitution& s) {
  Clause out;
  out.id = c.id;
  out.provenance = c.provenance;
  for (const auto& f : c.constraint) {
    Formula g = s.apply(f);
    if (g.is_true()) continue;
    out.constraint.push_back(g);
  }
  for (const auto& l : c.literals) out.literals.push_back(s.apply(l));
  return out;
}

Clause rename_apart(const Clause& c, const std::set<Var>& avoid, std::map<Var, Var>& renaming) {
  std::set<Var> used = avoid;
  std::set<Var> own = c.vars();
  used.insert(own.begin(), own.end());
  std::map<Var, Var> r;
  for (const auto& v : own) {
    if (!avoid.count(v)) continue;
    for (int k = 1;; ++k) {
      Var fresh = v + "_" + std::to_string(k);
      if (!used.count(fresh)) {
        used.insert(fresh);
        r.emplace(v, fresh);
        renaming.emplace(fresh, v);
        break;
      }
    }
  }
  return apply_substitution(c, Substitution::renaming(r));
}

Precedence::Precedence(const std::vector<Predicate>& ascending) {
  for (const auto& p : ascending) {
    if (rank_.count(p)) throw Error("predicate '" + p + "' listed twice in precedence");
    rank_.emplace(p, rank_.size());
  }
}

std::size_t Precedence::rank(const Predicate& p) const {
  auto it = rank_.find(p);
  if (it == rank_.end()) throw Error("undeclared predicate '" + p + "'");
  return it->second;
}

std::vector<Predicate> Precedence::ascending() const {
  std::vector<Predicate> out(rank_.size());
  for (const auto& [p, r] : rank_) out[r] = p;
  return out;
}

Comparison compare_literals(const Literal& a, const Literal& b, const Precedence& ord) {
  std::size_t ra = ord.rank(a.atom.predicate), rb = ord.rank(b.atom.predicate);
  if (ra != rb) return ra < rb ? Comparison::Less : Comparison::Greater;
  if (a.positive != b.positive) return a.positive ? Comparison::Less : Comparison::Greater;
  return a.atom.args == b.atom.args ? Comparison::Equal : Comparison::Incomparable;
}

std::vector<MaximalLiteral> maximal_literals(const Clause& c, const Precedence& ord) {
  if (c.literals.empty()) throw Error("clause " + clause_name(c.id) + " has an empty first-order part");
  std::vector<MaximalLiteral> out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    bool maximal = true, strict = true;
    for (std::size_t j = 0; j < c.literals.size() && maximal; ++j) {
      if (i == j) continue;
      switch (compare_literals(c.literals[i], c.literals[j], ord)) {
        case Comparison::Less: maximal = false; break;
        case Comparison::Equal: strict = false; break;
        default: break;
      }
    }
    if (maximal) out.push_back({i, strict});
  }
  return out;
}

std::optional<Substitution> unify_atoms(const FOAtom& a, const FOAtom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  std::map<Var, Var> parent;
  auto find = [&](Var v) {
    while (parent.count(v) && parent[v] != v) v = parent[v];
    return v;
  };
  for (const auto& v : a.args) parent.emplace(v, v);
  for (const auto& v : b.args) parent.emplace(v, v);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    Var ra = find(a.args[i]), rb = find(b.args[i]);
    if (ra != rb) parent[ra] = rb;
  }
  // Representative per class: first variable of b in argument order.
  std::map<Var, Var> rep;
  for (const auto& v : b.args) rep.emplace(find(v), v);
  for (const auto& v : a.args) rep.emplace(find(v), v);
  Substitution s;
  for (const auto& [v, p] : parent) s.bind(v, rep.at(find(v)));
  return s;
}

}  // namespace chc
