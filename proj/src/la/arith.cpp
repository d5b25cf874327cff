#include "chcmodel/arith.hpp"

#include <cctype>

namespace chc {

std::string_view theory_name(Theory th) {
  switch (th) {
    case Theory::LRA: return "lra";
    case Theory::LQA: return "lqa";
    case Theory::LIA: return "lia";
  }
  return "?";
}

Theory theory_from_name(std::string_view name) {
  if (name == "lra") return Theory::LRA;
  if (name == "lqa") return Theory::LQA;
  if (name == "lia") return Theory::LIA;
  throw Error("unknown theory '" + std::string(name) + "'");
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error("malformed number '" + s + "'");
  std::size_t slash = s.find('/');
  for (std::size_t k = i; k < s.size(); ++k) {
    if (k == slash) continue;
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw Error("malformed number '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error("malformed number '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer gcd_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer mod_of(const Integer& a, const Integer& m) {
  Integer r;
  Integer am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

LinTerm LinTerm::constant(const Rational& k) {
  LinTerm t;
  t.constant_ = k;
  return t;
}

LinTerm LinTerm::variable(const Var& v, const Rational& c) {
  LinTerm t;
  t.add_term(v, c);
  return t;
}

Rational LinTerm::coeff(const Var& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::set<Var> LinTerm::vars() const {
  std::set<Var> out;
  for (const auto& [v, c] : coeffs_) out.insert(v);
  return out;
}

void LinTerm::add_term(const Var& v, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, c);
  constant_ += o.constant_;
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
  constant_ -= o.constant_;
  return *this;
}

LinTerm& LinTerm::operator*=(const Rational& s) {
  if (s == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= s;
  constant_ *= s;
  return *this;
}

LinTerm LinTerm::operator-() const {
  LinTerm t = *this;
  t *= Rational(-1);
  return t;
}

LinTerm LinTerm::substitute(const Var& v, const LinTerm& t) const {
  auto it = coeffs_.find(v);
  if (it == coeffs_.end()) return *this;
  Rational c = it->second;
  LinTerm out = without(v);
  out += t * c;
  return out;
}

LinTerm LinTerm::substitute(const std::map<Var, LinTerm>& s) const {
  LinTerm out = LinTerm::constant(constant_);
  for (const auto& [v, c] : coeffs_) {
    auto it = s.find(v);
    if (it == s.end())
      out.add_term(v, c);
    else
      out += it->second * c;
  }
  return out;
}

LinTerm LinTerm::without(const Var& v) const {
  LinTerm out = *this;
  out.coeffs_.erase(v);
  return out;
}

Rational LinTerm::evaluate(const Assignment& a) const {
  Rational r = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("unassigned variable '" + v + "'");
    r += c * it->second;
  }
  return r;
}

bool operator<(const LinTerm& a, const LinTerm& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  auto ia = a.coeffs_.begin();
  auto ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return a.constant_ < b.constant_;
}

}  // namespace chc
