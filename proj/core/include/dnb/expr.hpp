#ifndef DNB_EXPR_HPP
#define DNB_EXPR_HPP

#include <dnb/jet.hpp>
#include <dnb/poly.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dnb {

//! Rational function in canonical reduced form. Invariants: num and den have
//! integer coefficients with no common polynomial or integer factor, den is
//! nonzero with positive graded-lex leading coefficient, and zero is 0/1.
//! Equality of values is therefore structural equality.
class expr {
public:
  expr() : expr(zero(varset{})) {}

  static expr zero(const varset& vars) {
    return expr(poly::zero(vars), poly::constant(vars, 1), true);
  }
  static expr one(const varset& vars) { return constant(vars, 1); }
  static expr constant(const varset& vars, const rational& c);
  static expr variable(const varset& vars, std::size_t index);
  static expr from_poly(poly p);
  //! General quotient; throws division_by_zero when d normalizes to zero.
  static expr quotient(poly n, poly d);

  const varset& vars() const { return num_.vars(); }
  const poly& num() const { return num_; }
  const poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  //! Pre: is_constant().
  rational constant_value() const;

  expr operator-() const;
  expr operator+(const expr& o) const;
  expr operator-(const expr& o) const;
  expr operator*(const expr& o) const;
  expr operator/(const expr& o) const;
  expr& operator+=(const expr& o) { return *this = *this + o; }
  expr& operator-=(const expr& o) { return *this = *this - o; }
  expr& operator*=(const expr& o) { return *this = *this * o; }
  expr& operator/=(const expr& o) { return *this = *this / o; }

  expr scaled(const rational& c) const;
  //! Integer power; negative exponents invert (throws on zero base).
  expr pow(int k) const;

  //! Partial derivative with respect to variable v.
  expr diff(std::size_t v) const;

  //! Full substitution: values[i] replaces variable i; all values must share
  //! one varset, which becomes the result's varset. Throws division_by_zero
  //! when the denominator collapses to zero under the substitution.
  expr substitute(const std::vector<expr>& values) const;

  //! Rebuild in another varset via an index map (see poly::remap).
  expr remap(const varset& target, const std::vector<int>& old_to_new) const;

  //! Exact evaluation at a rational point; nullopt at a pole.
  std::optional<rational> eval_rational(const std::vector<rational>& point) const;

  //! Double evaluation; throws division_by_zero near a pole.
  double eval_double(const std::vector<double>& point) const;

  //! Order-2 jet at a double point; throws division_by_zero near a pole.
  jet2 eval_jet(const std::vector<double>& point) const;

  bool operator==(const expr& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const expr& o) const { return !(*this == o); }
  //! Total order for deterministic containers.
  static int compare(const expr& a, const expr& b);

  //! Canonical text; see poly::to_string for the term format.
  std::string to_string() const;

  //! Parses the grammar: integers, declared variable names, + - * /, integer
  //! powers ^k with k >= 0, parentheses. Throws parse_error with a position.
  static expr parse(const std::string& text, const varset& vars);

private:
  expr(poly n, poly d, bool /*canonical*/) : num_(std::move(n)), den_(std::move(d)) {}

  //! Full canonicalization (polynomial GCD + content/sign normalization).
  static expr make(poly n, poly d);
  //! Content/sign normalization only; pre: gcd(n, d) = 1 as polynomials.
  static expr make_reduced(poly n, poly d);

  poly num_;
  poly den_;
};

} // namespace dnb

#endif
