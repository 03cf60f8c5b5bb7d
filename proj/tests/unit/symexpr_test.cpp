#include <doctest.h>

#include <dnb/errors.hpp>
#include <dnb/expr.hpp>
#include <dnb/poly.hpp>
#include <dnb/varset.hpp>

#include <string>
#include <vector>

using namespace dnb;

namespace {
expr E(const varset& v, const std::string& t) { return expr::parse(t, v); }
}

TEST_CASE("Variable sets") {
  varset v = varset::coords(3);
  CHECK(v.size() == 3);
  CHECK(v.name(0) == "u1");
  CHECK(v.name(2) == "u3");
  CHECK(v.index("u2") == std::size_t{1});
  CHECK(!v.index("u4").has_value());

  varset w = v.extended({"lam"});
  CHECK(w.size() == 4);
  CHECK(w.name(3) == "lam");
  CHECK(v == varset::coords(3));
  CHECK(v != w);
}

TEST_CASE("Polynomial arithmetic") {
  varset v = varset::coords(2);
  poly x = poly::variable(v, 0), y = poly::variable(v, 1);

  CHECK((x + y) * (x + y) == x * x + x * y.scaled(2) + y * y);
  CHECK((x - y) * (x + y) == x * x - y * y);
  CHECK((x + y).pow(3) == x.pow(3) + x.pow(2) * y.scaled(3) + x * y.pow(2).scaled(3) + y.pow(3));
  CHECK(poly::zero(v).is_zero());
  CHECK(poly::constant(v, 1).is_one());
  CHECK((x * y).total_degree() == 2);
  CHECK((x * y * y).degree_in(1) == 2);
  CHECK(x.diff(0).is_one());
  CHECK(x.diff(1).is_zero());
  CHECK((x * y + y.pow(3)).diff(1) == x + y.pow(2).scaled(3));
}

TEST_CASE("Polynomial canonical text") {
  varset v = varset::coords(2);
  CHECK(E(v, "u2 + u1^2 - 3").to_string() == "u1^2 + u2 - 3");
  CHECK(E(v, "-u1 + u2").to_string() == "-u1 + u2");
  CHECK(E(v, "u2*u1").to_string() == "u1*u2");
  CHECK(E(v, "0").to_string() == "0");
  CHECK(E(v, "2*u1^2*u2 - u2^2").to_string() == "2*u1^2*u2 - u2^2");
}

TEST_CASE("Polynomial gcd") {
  varset v = varset::coords(2);
  poly x = poly::variable(v, 0), y = poly::variable(v, 1);

  CHECK(poly_gcd(x * x - y * y, (x - y) * (x - y)) == x - y);
  CHECK(poly_gcd(x * y.scaled(6), y * y.scaled(4)) == y);
  CHECK(poly_gcd(poly::zero(v), x) == x);
  CHECK(poly_gcd(poly::zero(v), poly::zero(v)).is_zero());
  // primitive representative with positive leading coefficient
  CHECK(poly_gcd((x + y).scaled(-2), (x + y).scaled(4)) == x + y);

  poly a = (x + y) * (x * x + y.scaled(3)) * (x - y.scaled(2));
  poly b = (x + y) * (x * x + y.scaled(3)) * (y + poly::constant(v, 5));
  CHECK(poly_gcd(a, b) == (x + y) * (x * x + y.scaled(3)));
}

TEST_CASE("Rational function canonical form") {
  varset v = varset::coords(2);

  // common factors cancel on construction
  CHECK(E(v, "(u1^2 - u2^2)/(u1 - u2)") == E(v, "u1 + u2"));
  CHECK(E(v, "(2*u1)/(4*u2)") == E(v, "u1/(2*u2)"));
  // denominator sign is normalized, so equality is structural
  expr a = E(v, "u1/(u2 - u1)");
  expr b = E(v, "(-u1)/(u1 - u2)");
  CHECK(a == b);
  CHECK(E(v, "(u1 + u2) - u2") == E(v, "u1"));
  CHECK((E(v, "1/u1") + E(v, "1/u2")) == E(v, "(u1 + u2)/(u1*u2)"));
  CHECK((E(v, "u1/u2") * E(v, "u2/u1")).is_constant());
  CHECK(E(v, "u1 - u1").is_zero());
}

TEST_CASE("Division by zero") {
  varset v = varset::coords(2);
  // inside the parser the failure is reported with its position
  CHECK_THROWS_AS(E(v, "1/(u1 - u1)"), parse_error);
  CHECK_THROWS_AS(E(v, "u2") / expr::zero(v), division_by_zero);
  // substitution that collapses the denominator
  expr e = E(v, "1/(u1 - u2)");
  std::vector<expr> same = {E(v, "u2"), E(v, "u2")};
  CHECK_THROWS_AS(e.substitute(same), division_by_zero);
}

TEST_CASE("Parser grammar") {
  varset v = varset::coords(2);
  CHECK(E(v, "3/2*u1") == E(v, "u1").scaled(rational(3) / 2));
  CHECK(E(v, "-u1^2") == -E(v, "u1^2")); // power binds tighter than unary minus
  CHECK(E(v, "2^3") == expr::constant(v, 8));
  CHECK(E(v, "u1^0").is_constant());
  CHECK(E(v, "(u1 + u2)^2") == E(v, "u1^2 + 2*u1*u2 + u2^2"));
  CHECK(E(v, "u1 - u2 - u2") == E(v, "u1 - 2*u2"));
  CHECK(E(v, "u1/u2/u2") == E(v, "u1/u2^2"));

  CHECK_THROWS_AS(E(v, "u3 + 1"), parse_error);
  CHECK_THROWS_AS(E(v, "u1 + "), parse_error);
  CHECK_THROWS_AS(E(v, "(u1"), parse_error);
  CHECK_THROWS_AS(E(v, "u1 @ u2"), parse_error);
  try {
    E(v, "u1 + @");
    CHECK(false);
  } catch (const parse_error& p) {
    CHECK(p.position() == 5);
  }
}

TEST_CASE("Round trip through text") {
  varset v = varset::coords(2);
  for (const char* s : {"u1 + u2", "-u1 + u2", "u1^2*u2 - 3*u2", "(u1 + u2)/(u1 - u2)",
                        "1/u2", "-1/2*u1", "0", "5"}) {
    expr e = E(v, s);
    CHECK(E(v, e.to_string()) == e);
  }
}

TEST_CASE("Derivatives") {
  varset v = varset::coords(2);
  CHECK(E(v, "u1*u2 + u2^3").diff(1) == E(v, "u1 + 3*u2^2"));
  CHECK(E(v, "u1/u2").diff(1) == E(v, "-u1/u2^2"));
  CHECK(E(v, "1/(u1 + u2)").diff(0) == E(v, "-1/(u1 + u2)^2"));
  CHECK(E(v, "7").diff(0).is_zero());
}

TEST_CASE("Substitution and remap") {
  varset v = varset::coords(2);
  expr e = E(v, "u1^2 - u2");
  std::vector<expr> vals = {E(v, "u2 + 1"), E(v, "u1*u2")};
  CHECK(e.substitute(vals) == E(v, "u2^2 + 2*u2 + 1 - u1*u2"));

  varset w = v.extended({"lam"});
  expr f = e.remap(w, {0, 1});
  CHECK(f.vars() == w);
  CHECK(f.to_string() == "u1^2 - u2");
  CHECK(f.remap(v, {0, 1, -1}) == e);
}

TEST_CASE("Exact and floating evaluation") {
  varset v = varset::coords(2);
  expr e = E(v, "(u1 + u2)/(u1 - u2)");
  CHECK(e.eval_rational({rational(3), rational(1)}) == rational(2));
  CHECK(!e.eval_rational({rational(1), rational(1)}).has_value()); // pole
  CHECK(e.eval_double({3.0, 1.0}) == doctest::Approx(2.0));
  CHECK(E(v, "u1^2 - 1/3").eval_rational({rational(1) / 2, rational(0)}) ==
        rational(-1) / 12);
}

TEST_CASE("Jet evaluation") {
  varset v = varset::coords(2);
  jet2 j = E(v, "u1^2*u2").eval_jet({2.0, 3.0});
  CHECK(j.value() == doctest::Approx(12.0));
  CHECK(j.grad(0) == doctest::Approx(12.0)); // 2*u1*u2
  CHECK(j.grad(1) == doctest::Approx(4.0));  // u1^2
  CHECK(j.hess(0, 0) == doctest::Approx(6.0));
  CHECK(j.hess(0, 1) == doctest::Approx(4.0));
  CHECK(j.hess(1, 1) == doctest::Approx(0.0));

  // quotient rule through the jet: 1/u2 at u2 = 2
  jet2 q = E(v, "1/u2").eval_jet({5.0, 2.0});
  CHECK(q.value() == doctest::Approx(0.5));
  CHECK(q.grad(1) == doctest::Approx(-0.25));
  CHECK(q.hess(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("Total order on expressions") {
  varset v = varset::coords(2);
  expr a = E(v, "u1"), b = E(v, "u2");
  CHECK(expr::compare(a, a) == 0);
  CHECK(expr::compare(a, b) != 0);
  CHECK(expr::compare(a, b) == -expr::compare(b, a));
}

TEST_CASE("Univariate coefficient extraction") {
  varset v = varset::coords(2);
  poly p = E(v, "u1^2*u2 + 3*u1 - u2^2").num();
  std::vector<poly> cs = p.coeffs_in(0);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == E(v, "-u2^2").num());
  CHECK(cs[1] == E(v, "3").num());
  CHECK(cs[2] == E(v, "u2").num());
}
