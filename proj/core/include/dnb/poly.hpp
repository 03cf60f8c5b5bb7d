#ifndef DNB_POLY_HPP
#define DNB_POLY_HPP

#include <dnb/errors.hpp>
#include <dnb/rational.hpp>
#include <dnb/varset.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace dnb {

//! Exponent vector; length always equals the size of the owning varset.
using monomial = std::vector<unsigned>;

//! Graded lexicographic order: higher total degree wins, ties broken by the
//! earliest variable with the larger exponent. Returns <0, 0, >0.
int grlex_compare(const monomial& a, const monomial& b);

struct term {
  monomial mono;
  rational coeff;
};

//! Multivariate polynomial with rational coefficients in canonical form:
//! terms sorted in descending graded-lex order, no zero coefficients.
class poly {
public:
  poly() = default;
  static poly zero(const varset& vars) { return poly(vars, {}); }
  static poly constant(const varset& vars, const rational& c);
  static poly variable(const varset& vars, std::size_t index);
  //! Single term c * x^m (canonicalized; c may be zero).
  static poly single(const varset& vars, monomial m, const rational& c);
  //! From an unsorted term list with possible duplicates.
  static poly from_terms(const varset& vars, std::vector<term> ts);

  const varset& vars() const { return vars_; }
  const std::vector<term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  //! Pre: is_constant().
  rational constant_value() const;

  //! Leading term under graded-lex. Pre: !is_zero().
  const term& leading() const { return terms_.front(); }

  unsigned total_degree() const;
  unsigned degree_in(std::size_t v) const;
  bool uses(std::size_t v) const { return degree_in(v) > 0; }

  poly operator-() const;
  poly operator+(const poly& o) const;
  poly operator-(const poly& o) const;
  poly operator*(const poly& o) const;
  poly& operator+=(const poly& o) { return *this = *this + o; }
  poly& operator-=(const poly& o) { return *this = *this - o; }
  poly& operator*=(const poly& o) { return *this = *this * o; }

  poly scaled(const rational& c) const;
  poly mul_single(const monomial& m, const rational& c) const;
  poly pow(unsigned k) const;

  //! Partial derivative with respect to variable v.
  poly diff(std::size_t v) const;

  //! Splits p = c * pp with pp having integer coefficients, content 1 and a
  //! positive leading coefficient; c is a signed rational. Zero -> (0, zero).
  std::pair<rational, poly> rat_content_primitive() const;

  //! Exact quotient, or nullopt when b does not divide a.
  static std::optional<poly> divexact(const poly& a, const poly& b);

  //! Dense coefficient list of *this viewed as univariate in v; entry k is
  //! the coefficient of v^k (with v-exponent zeroed), possibly zero.
  std::vector<poly> coeffs_in(std::size_t v) const;

  //! Rebuilds this polynomial in another varset; old_to_new[i] gives the new
  //! index of old variable i, or -1 when the variable must not occur.
  poly remap(const varset& target, const std::vector<int>& old_to_new) const;

  //! Evaluate with values of any ring type. conv maps a rational coefficient
  //! into the ring; values must match the varset size.
  template <class T, class Conv>
  T eval(const std::vector<T>& values, const T& zero, const T& one, Conv conv) const {
    // Per-variable power tables up to the degree actually used.
    std::vector<std::vector<T>> pw(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      unsigned d = degree_in(v);
      pw[v].reserve(d + 1);
      pw[v].push_back(one);
      for (unsigned k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * values[v]);
    }
    T acc = zero;
    for (const term& t : terms_) {
      T prod = conv(t.coeff);
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (t.mono[v] > 0) prod = prod * pw[v][t.mono[v]];
      acc = acc + prod;
    }
    return acc;
  }

  bool operator==(const poly& o) const;
  bool operator!=(const poly& o) const { return !(*this == o); }
  //! Total order for deterministic containers: grlex on term lists.
  static int compare(const poly& a, const poly& b);

  //! Canonical text: descending graded-lex terms, single leading sign.
  std::string to_string() const;

private:
  poly(varset vars, std::vector<term> ts) : vars_(std::move(vars)), terms_(std::move(ts)) {}

  varset vars_;
  std::vector<term> terms_;
};

//! GCD in Q[vars] up to units, returned as the primitive integer-coefficient
//! representative with positive leading coefficient. gcd(0,0) = 0; any other
//! argument pair yields a nonzero primitive polynomial. Recursion peels the
//! last occurring variable, with subresultant pseudo-remainder sequences on
//! the primitive parts.
poly poly_gcd(const poly& a, const poly& b);

} // namespace dnb

#endif
