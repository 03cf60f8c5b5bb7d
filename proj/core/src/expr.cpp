#include <dnb/expr.hpp>

#include <cctype>
#include <sstream>

namespace dnb {

expr expr::constant(const varset& vars, const rational& c) {
  return make_reduced(poly::constant(vars, c), poly::constant(vars, 1));
}

expr expr::variable(const varset& vars, std::size_t index) {
  return expr(poly::variable(vars, index), poly::constant(vars, 1), true);
}

expr expr::from_poly(poly p) {
  poly one = poly::constant(p.vars(), 1);
  return make_reduced(std::move(p), std::move(one));
}

expr expr::quotient(poly n, poly d) { return make(std::move(n), std::move(d)); }

rational expr::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

expr expr::make_reduced(poly n, poly d) {
  if (d.is_zero()) throw division_by_zero("division by zero expression");
  if (n.is_zero()) return zero(n.vars());
  auto [cn, pn] = n.rat_content_primitive();
  auto [cd, pd] = d.rat_content_primitive();
  rational r = cn / cd;
  return expr(pn.scaled(numer(r)), pd.scaled(denom(r)), true);
}

expr expr::make(poly n, poly d) {
  if (d.is_zero()) throw division_by_zero("division by zero expression");
  if (n.is_zero()) return zero(n.vars());
  poly g = poly_gcd(n, d);
  if (!g.is_one()) {
    n = poly::divexact(n, g).value();
    d = poly::divexact(d, g).value();
  }
  return make_reduced(std::move(n), std::move(d));
}

expr expr::operator-() const { return expr(-num_, den_, true); }

expr expr::operator+(const expr& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return make(num_ + o.num_, den_);
  poly g = poly_gcd(den_, o.den_);
  if (g.is_one()) {
    // Cross terms stay coprime to the product denominator.
    return make_reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  poly da = poly::divexact(den_, g).value();
  poly db = poly::divexact(o.den_, g).value();
  poly n = num_ * db + o.num_ * da;
  poly t = poly_gcd(n, g);
  if (!t.is_one()) {
    n = poly::divexact(n, t).value();
    g = poly::divexact(g, t).value();
  }
  return make_reduced(std::move(n), g * da * db);
}

expr expr::operator-(const expr& o) const { return *this + (-o); }

expr expr::operator*(const expr& o) const {
  if (is_zero() || o.is_zero()) return zero(vars());
  poly g1 = poly_gcd(num_, o.den_);
  poly g2 = poly_gcd(o.num_, den_);
  poly n1 = g1.is_one() ? num_ : poly::divexact(num_, g1).value();
  poly d2 = g1.is_one() ? o.den_ : poly::divexact(o.den_, g1).value();
  poly n2 = g2.is_one() ? o.num_ : poly::divexact(o.num_, g2).value();
  poly d1 = g2.is_one() ? den_ : poly::divexact(den_, g2).value();
  return make_reduced(n1 * n2, d1 * d2);
}

expr expr::operator/(const expr& o) const {
  if (o.is_zero()) throw division_by_zero("division by zero expression");
  if (is_zero()) return *this;
  poly g1 = poly_gcd(num_, o.num_);
  poly g2 = poly_gcd(o.den_, den_);
  poly n1 = g1.is_one() ? num_ : poly::divexact(num_, g1).value();
  poly d2 = g1.is_one() ? o.num_ : poly::divexact(o.num_, g1).value();
  poly n2 = g2.is_one() ? o.den_ : poly::divexact(o.den_, g2).value();
  poly d1 = g2.is_one() ? den_ : poly::divexact(den_, g2).value();
  return make_reduced(n1 * n2, d1 * d2);
}

expr expr::scaled(const rational& c) const {
  if (c == 0 || is_zero()) return zero(vars());
  return make_reduced(num_.scaled(c), den_);
}

expr expr::pow(int k) const {
  if (k == 0) return one(vars());
  bool inv = k < 0;
  unsigned e = inv ? static_cast<unsigned>(-(long long)k) : static_cast<unsigned>(k);
  if (inv && is_zero()) throw division_by_zero("zero raised to a negative power");
  // num and den are coprime, so componentwise powers stay coprime.
  poly n = num_.pow(e), d = den_.pow(e);
  if (inv) std::swap(n, d);
  return make_reduced(std::move(n), std::move(d));
}

expr expr::diff(std::size_t v) const {
  if (den_.is_one()) return from_poly(num_.diff(v));
  // (n/d)' = (n' d - n d') / d^2
  return make(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
}

expr expr::substitute(const std::vector<expr>& values) const {
  if (values.size() != vars().size())
    throw engine_error("substitute: binding count does not match varset");
  const varset& target = values.empty() ? vars() : values[0].vars();
  expr z = zero(target), o = one(target);
  auto conv = [&target](const rational& c) { return constant(target, c); };
  expr n = num_.eval<expr>(values, z, o, conv);
  expr d = den_.eval<expr>(values, z, o, conv);
  if (d.is_zero())
    throw division_by_zero("substitution sends the denominator to zero");
  return n / d;
}

expr expr::remap(const varset& target, const std::vector<int>& old_to_new) const {
  return expr(num_.remap(target, old_to_new), den_.remap(target, old_to_new), true);
}

std::optional<rational> expr::eval_rational(const std::vector<rational>& point) const {
  rational z = 0, o = 1;
  auto conv = [](const rational& c) { return c; };
  rational d = den_.eval<rational>(point, z, o, conv);
  if (d == 0) return std::nullopt;
  rational n = num_.eval<rational>(point, z, o, conv);
  return n / d;
}

double expr::eval_double(const std::vector<double>& point) const {
  auto conv = [](const rational& c) { return to_double(c); };
  double d = den_.eval<double>(point, 0.0, 1.0, conv);
  if (std::fabs(d) <= 1e-12)
    throw division_by_zero("evaluation hit a pole of the denominator");
  return num_.eval<double>(point, 0.0, 1.0, conv) / d;
}

jet2 expr::eval_jet(const std::vector<double>& point) const {
  std::size_t n = point.size();
  std::vector<jet2> vals;
  vals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) vals.push_back(jet2::variable(n, i, point[i]));
  jet2 z = jet2::constant(n, 0), o = jet2::constant(n, 1);
  auto conv = [n](const rational& c) { return jet2::constant(n, to_double(c)); };
  jet2 dj = den_.eval<jet2>(vals, z, o, conv);
  jet2 nj = num_.eval<jet2>(vals, z, o, conv);
  return nj / dj;
}

int expr::compare(const expr& a, const expr& b) {
  int c = poly::compare(a.num_, b.num_);
  if (c != 0) return c;
  return poly::compare(a.den_, b.den_);
}

std::string expr::to_string() const {
  if (den_.is_one()) return num_.to_string();
  auto wrap_num = [](const poly& p) {
    if (p.terms().size() > 1) return "(" + p.to_string() + ")";
    return p.to_string();
  };
  // The denominator reparses unambiguously only as a constant or a bare power.
  auto wrap_den = [](const poly& p) {
    if (p.is_constant()) return p.to_string();
    if (p.terms().size() == 1 && p.leading().coeff == 1) {
      int used = 0;
      for (unsigned e : p.leading().mono)
        if (e) ++used;
      if (used == 1) return p.to_string();
    }
    return "(" + p.to_string() + ")";
  };
  return wrap_num(num_) + "/" + wrap_den(den_);
}

namespace {

// Recursive-descent parser for the expression grammar.
class parser {
public:
  parser(const std::string& text, const varset& vars) : text_(text), vars_(vars) {}

  expr run() {
    expr e = sum();
    skip_ws();
    if (pos_ != text_.size())
      throw parse_error("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

private:
  expr sum() {
    expr e = product();
    for (;;) {
      skip_ws();
      if (accept('+'))
        e += product();
      else if (accept('-'))
        e -= product();
      else
        return e;
    }
  }

  expr product() {
    expr e = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        expr d = unary();
        if (d.is_zero()) throw parse_error("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  expr unary() {
    skip_ws();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  expr power() {
    expr base = atom();
    for (;;) {
      skip_ws();
      if (!accept('^')) return base;
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw parse_error("expected a nonnegative integer exponent", at);
      unsigned long long k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        k = k * 10 + static_cast<unsigned long long>(text_[pos_] - '0');
        if (k > 1u << 20) throw parse_error("exponent too large", at);
        ++pos_;
      }
      base = base.pow(static_cast<int>(k));
    }
  }

  expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      expr e = sum();
      skip_ws();
      if (!accept(')')) throw parse_error("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return expr::constant(vars_, rational(bigint(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      auto idx = vars_.index(name);
      if (!idx) throw parse_error("unknown variable '" + name + "'", start);
      return expr::variable(vars_, *idx);
    }
    throw parse_error("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  const std::string& text_;
  const varset& vars_;
  std::size_t pos_ = 0;
};

} // namespace

expr expr::parse(const std::string& text, const varset& vars) {
  return parser(text, vars).run();
}

} // namespace dnb
