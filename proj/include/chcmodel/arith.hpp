#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace chc {

using Integer = mpz_class;
using Rational = mpq_class;
using Var = std::string;

/// Background theory of a problem instance. Fixed per run.
enum class Theory { LRA, LQA, LIA };

std::string_view theory_name(Theory th);
Theory theory_from_name(std::string_view name);

inline bool is_integral_theory(Theory th) { return th == Theory::LIA; }

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rational helpers.
Rational make_rational(const Integer& num, const Integer& den = 1);
Rational parse_rational(std::string_view text);
bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
Integer gcd_of(const Integer& a, const Integer& b);
Integer lcm_of(const Integer& a, const Integer& b);
/// Mathematical modulus, result in [0, |m|).
Integer mod_of(const Integer& a, const Integer& m);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Variable assignment. Rational values; integral under LIA.
using Assignment = std::map<Var, Rational>;

/// Linear term  sum(c_i * v_i) + k  over exact rationals. Zero coefficients
/// are never stored.
class LinTerm {
 public:
  LinTerm() = default;
  static LinTerm constant(const Rational& k);
  static LinTerm variable(const Var& v, const Rational& c = 1);

  const std::map<Var, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant_term() const { return constant_; }
  Rational coeff(const Var& v) const;
  bool has_var(const Var& v) const { return coeffs_.count(v) != 0; }
  bool is_constant() const { return coeffs_.empty(); }
  std::set<Var> vars() const;

  void add_term(const Var& v, const Rational& c);
  void add_constant(const Rational& k) { constant_ += k; }

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rational& s);
  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(LinTerm a, const Rational& s) { return a *= s; }
  LinTerm operator-() const;

  /// Replace v by t.
  LinTerm substitute(const Var& v, const LinTerm& t) const;
  /// Simultaneous substitution of several variables.
  LinTerm substitute(const std::map<Var, LinTerm>& s) const;
  /// The term with v removed.
  LinTerm without(const Var& v) const;

  /// Requires every variable to be assigned.
  Rational evaluate(const Assignment& a) const;

  friend bool operator==(const LinTerm& a, const LinTerm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const LinTerm& a, const LinTerm& b);

 private:
  std::map<Var, Rational> coeffs_;
  Rational constant_{0};
};

}  // namespace chc
