#include <doctest.h>

#include <dnb/compat.hpp>
#include <dnb/errors.hpp>

#include "../support/helpers.hpp"

using namespace dnb;
using dnbtest::canonical_bracket;
using dnbtest::E;
using dnbtest::identity_metric;
using dnbtest::metric_from;
using dnbtest::triangular_change;

namespace {
metric_pair canonical_pair() {
  hydro_bracket B = canonical_bracket();
  // pair order for directions alpha < beta is (g^beta, g^alpha)
  return metric_pair(B.g(1), B.g(0));
}
} // namespace

TEST_CASE("Canonical pair is compatible but singular") {
  metric_pair p = canonical_pair();
  CHECK(is_almost_compatible(p));
  CHECK(is_compatible(p));
  CHECK(nijenhuis(p).is_zero());
  CHECK(pencil_direct_check(p));

  relation_report r = compatibility(p);
  CHECK(r.overall);
  REQUIRE(r.find("b1") != nullptr);
  REQUIRE(r.find("b3") != nullptr);
  CHECK(r.find("b1")->pass);
  CHECK(r.find("b3")->pass);
}

TEST_CASE("Canonical pencil has a functional double root") {
  metric_pair p = canonical_pair();
  pencil_analysis_result pa = pencil_analysis(p);
  varset v = p.vars();

  REQUIRE(pa.char_poly.size() == 3);
  CHECK(pa.char_poly[2] == E(v, "-1"));
  CHECK(pa.char_poly[1] == E(v, "2*u2 - 2*u1"));
  CHECK(pa.char_poly[0] == E(v, "-(u2 - u1)^2"));
  CHECK(pa.char_poly_text ==
        "-u1^2 + 2*u1*u2 - 2*u1*lam - u2^2 + 2*u2*lam - lam^2");
  CHECK(pa.discriminant.is_zero());
  CHECK(!pa.nonsingular);
  CHECK(pa.note == "repeated eigenvalues; double root lam = u2 - u1");
}

TEST_CASE("Diagonal pair with distinct eigenvalues") {
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u1", "0"}, {"0", "u2"}}), identity_metric(v, 2));
  CHECK(is_compatible(p));
  CHECK(nijenhuis(p).is_zero());
  CHECK(pencil_direct_check(p));

  pencil_analysis_result pa = pencil_analysis(p);
  CHECK(pa.char_poly[0] == E(v, "u1*u2"));
  CHECK(pa.char_poly[1] == E(v, "-u1 - u2"));
  CHECK(pa.char_poly[2] == expr::one(v));
  CHECK(pa.char_poly_text == "u1*u2 - u1*lam - u2*lam + lam^2");
  CHECK(pa.discriminant == E(v, "(u1 - u2)^2"));
  CHECK(pa.nonsingular);
  CHECK(pa.note == "eigenvalues distinct as functions");
}

TEST_CASE("Cross-variable dependence breaks compatibility") {
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u2 + 1", "0"}, {"0", "1"}}), identity_metric(v, 2));
  CHECK(!is_compatible(p));
  CHECK(!nijenhuis(p).is_zero());
  CHECK(!pencil_direct_check(p));
  CHECK(pencil_analysis(p).nonsingular);
}

TEST_CASE("Almost compatible is weaker than compatible") {
  // conformal pair: relation b1 holds, b3 fails, and the pencil is singular,
  // so the equivalence for nonsingular pairs is not contradicted
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u1^2 + u2^2", "0"}, {"0", "u1^2 + u2^2"}}),
                identity_metric(v, 2));
  CHECK(is_almost_compatible(p));
  CHECK(!is_compatible(p));
  CHECK(!pencil_direct_check(p));
  CHECK(!pencil_analysis(p).nonsingular);

  relation_report r = compatibility(p);
  CHECK(r.find("b1")->pass);
  CHECK(!r.find("b3")->pass);
  REQUIRE(r.find("b3")->witness.has_value());
}

TEST_CASE("Identical metrics are compatible") {
  varset v = varset::coords(2);
  tensor_field g = metric_from(v, {{"2*u2", "u1 + u2"}, {"u1 + u2", "2*u1"}});
  metric_pair p(g, g);
  CHECK(is_compatible(p));
  CHECK(nijenhuis(p).is_zero()); // the affinor is the identity
  // det(g - lam*g) = det(g) (1 - lam)^2: a functional double root at 1
  CHECK(!pencil_analysis(p).nonsingular);
}

TEST_CASE("Nonsingular equivalence") {
  // for nonsingular pairs: compatible <=> Nijenhuis vanishes <=> the pencil
  // Christoffel symbols and curvature are linear in the pencil parameters
  varset v = varset::coords(2);
  std::vector<std::vector<std::vector<std::string>>> firsts = {
      {{"u1", "0"}, {"0", "u2"}},
      {{"u1 + 1", "0"}, {"0", "2*u2"}},
      {{"u2 + 1", "0"}, {"0", "1"}},
      {{"u1^2 + 1", "0"}, {"0", "u2^2 + 2"}},
  };
  int checked = 0;
  for (const auto& rows : firsts) {
    tensor_field g1 = metric_from(v, rows);
    tensor_field g2 = identity_metric(v, 2);
    for (std::uint64_t seed : {0ULL, 21ULL, 22ULL}) {
      metric_pair p = seed == 0 ? metric_pair(g1, g2)
                                : metric_pair(transform_metric(g1, triangular_change(v, seed)),
                                              transform_metric(g2, triangular_change(v, seed)));
      REQUIRE(pencil_analysis(p).nonsingular);
      bool compat = is_compatible(p);
      CHECK(compat == nijenhuis(p).is_zero());
      CHECK(compat == pencil_direct_check(p));
      ++checked;
    }
  }
  CHECK(checked == 12);
}

TEST_CASE("Affinor") {
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u1", "0"}, {"0", "u2"}}), identity_metric(v, 2));
  const tensor_field& a = p.affinor();
  CHECK(a.at({0, 0}) == E(v, "u1"));
  CHECK(a.at({1, 1}) == E(v, "u2"));
  CHECK(a.at({0, 1}).is_zero());
  CHECK(a.shape()[0].var == variance::upper);
  CHECK(a.shape()[1].var == variance::lower);
  CHECK(p.dim() == 2);
  CHECK(p.g1() == metric_from(v, {{"u1", "0"}, {"0", "u2"}}));
}

TEST_CASE("Degenerate pair member is rejected lazily") {
  varset v = varset::coords(2);
  tensor_field sing = metric_from(v, {{"u1", "u1"}, {"u1", "u1"}});
  metric_pair p(identity_metric(v, 2), sing); // construction alone is fine
  try {
    p.md2();
    CHECK(false);
  } catch (const degenerate_metric& e) {
    CHECK(e.alpha() == 2);
  }
}

TEST_CASE("Nijenhuis entries of an incompatible pair") {
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u2 + 1", "0"}, {"0", "1"}}), identity_metric(v, 2));
  tensor_field N = nijenhuis(p);
  // N^k_{ij} is antisymmetric in i, j
  for (int k = 0; k < 2; ++k) {
    CHECK(N.at({k, 0, 0}).is_zero());
    CHECK(N.at({k, 1, 1}).is_zero());
    CHECK(N.at({k, 0, 1}) == -N.at({k, 1, 0}));
  }
  CHECK(!N.is_zero());
}

TEST_CASE("Diagonal form verification") {
  varset v = varset::coords(2);
  metric_pair p(metric_from(v, {{"u1", "0"}, {"0", "u2"}}), identity_metric(v, 2));
  coordinate_change ident(v, {E(v, "u1"), E(v, "u2")},
                          std::vector<expr>{E(v, "u1"), E(v, "u2")});
  CHECK(verify_diagonal_form(p, ident));
  coordinate_change mix(v, {E(v, "u1 + u2"), E(v, "u1 - u2")});
  CHECK(!verify_diagonal_form(p, mix));

  metric_pair c = canonical_pair();
  CHECK(!verify_diagonal_form(c, ident)); // the second metric is not diagonal
}
