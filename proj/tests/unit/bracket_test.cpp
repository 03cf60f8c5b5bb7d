#include <doctest.h>

#include <dnb/bracket.hpp>
#include <dnb/errors.hpp>
#include <dnb/io.hpp>

#include "../support/helpers.hpp"

using namespace dnb;
using dnbtest::canonical_bracket;
using dnbtest::E;
using dnbtest::fixture;
using dnbtest::metric_from;
using dnbtest::torus_bracket;

TEST_CASE("Torus bracket satisfies the closedness relations") {
  for (int n : {1, 2, 3}) {
    hydro_bracket B = torus_bracket(n);
    relation_report r = verify_poisson(B);
    CHECK(r.overall);
    for (const char* name : {"a1", "a2", "a3", "a4", "a5", "a6", "a7"}) {
      const relation_verdict* rv = r.find(name);
      REQUIRE(rv != nullptr);
      CHECK(rv->pass);
    }
  }
}

TEST_CASE("Canonical flat pair bracket") {
  hydro_bracket B = canonical_bracket();
  CHECK(verify_poisson(B).overall);

  // coefficients derived from the metrics: alpha = 1 all zero, alpha = 2 the
  // constant table b^{11}_2 = 1, b^{12}_1 = 2, b^{12}_2 = -1, b^{21}_1 = -1,
  // b^{21}_2 = 2, b^{22}_1 = 1
  CHECK(B.b(0).is_zero());
  varset v = B.vars();
  const tensor_field& b2 = B.b(1);
  CHECK(b2.at({0, 0, 1}) == expr::one(v));
  CHECK(b2.at({0, 1, 0}) == E(v, "2"));
  CHECK(b2.at({0, 1, 1}) == E(v, "-1"));
  CHECK(b2.at({1, 0, 0}) == E(v, "-1"));
  CHECK(b2.at({1, 0, 1}) == E(v, "2"));
  CHECK(b2.at({1, 1, 0}) == expr::one(v));
  CHECK(b2.at({0, 0, 0}).is_zero());
  CHECK(b2.at({1, 1, 1}).is_zero());
}

TEST_CASE("Derived coefficients reproduce explicit ones") {
  // the torus metrics for n = 2 are nondegenerate, so the coefficients are
  // forced by the metrics and must match the explicit table
  hydro_bracket T = torus_bracket(2);
  hydro_bracket derived = hydro_bracket::from_metrics(T.vars(), {T.g(0), T.g(1)});
  for (int a = 0; a < 2; ++a) {
    CHECK(derived.g(a) == T.g(a));
    CHECK(derived.b(a) == T.b(a));
  }
}

TEST_CASE("Relation witnesses") {
  varset v = varset::coords(2);

  // zeroed coefficients break a2 first at i=1, j=1, k=1, alpha=1 with
  // residual dg^{11,1}/du^1 = 2
  bracket_file broken = load_bracket(fixture("broken_a2.json"));
  relation_report r = verify_poisson(broken.bracket);
  CHECK(!r.overall);
  const relation_verdict* a2 = r.find("a2");
  REQUIRE(a2 != nullptr);
  CHECK(!a2->pass);
  REQUIRE(a2->witness.has_value());
  const violation& w = *a2->witness;
  REQUIRE(w.indices.size() == 4);
  CHECK(w.indices[0] == std::pair<std::string, int>{"i", 1});
  CHECK(w.indices[1] == std::pair<std::string, int>{"j", 1});
  CHECK(w.indices[2] == std::pair<std::string, int>{"k", 1});
  CHECK(w.indices[3] == std::pair<std::string, int>{"alpha", 1});
  CHECK(w.residual == E(v, "2"));
  CHECK(r.find("a1")->pass); // the metrics themselves are fine

  // a non-symmetric metric breaks a1 at i=1, j=2
  tensor_field g = metric_from(v, {{"1", "u1"}, {"0", "1"}});
  tensor_field b(v, {{index_kind::coordinate, variance::upper, 2},
                     {index_kind::coordinate, variance::upper, 2},
                     {index_kind::coordinate, variance::lower, 2}});
  relation_report r1 = verify_poisson(hydro_bracket(v, {g}, {b}));
  const relation_verdict* a1 = r1.find("a1");
  REQUIRE(a1 != nullptr);
  CHECK(!a1->pass);
  REQUIRE(a1->witness.has_value());
  CHECK(a1->witness->indices[0] == std::pair<std::string, int>{"i", 1});
  CHECK(a1->witness->indices[1] == std::pair<std::string, int>{"j", 2});
  CHECK(a1->witness->residual == E(v, "u1"));
}

TEST_CASE("Non-proportional one-component pair fails verify") {
  bracket_file bad = load_bracket(fixture("onecomp_bad.json"));
  relation_report r = verify_poisson(bad.bracket);
  CHECK(!r.overall);
  varset v = bad.bracket.vars();
  const relation_verdict* a4 = r.find("a4");
  REQUIRE(a4 != nullptr);
  CHECK(!a4->pass);
  REQUIRE(a4->witness.has_value());
  CHECK(a4->witness->residual == E(v, "3*u1^2 - 3"));
  const relation_verdict* a6 = r.find("a6");
  REQUIRE(a6 != nullptr);
  CHECK(!a6->pass);
  REQUIRE(a6->witness.has_value());
  CHECK(a6->witness->residual == E(v, "-2*u1"));
}

TEST_CASE("Bracket geometry") {
  hydro_bracket B = canonical_bracket();
  bracket_geometry geo = derive_geometry(B);
  REQUIRE(geo.metrics.size() == 2);
  REQUIRE(geo.connections.size() == 2);
  CHECK(geo.levi_civita_consistent);
  CHECK(geo.metrics[0].is_flat());
  CHECK(geo.metrics[1].is_flat());
  // Gamma^{k,alpha}_{ij} = -g^alpha_{is} b^{sk,alpha}_j matches Levi-Civita
  for (int a = 0; a < 2; ++a)
    CHECK(geo.connections[static_cast<std::size_t>(a)] ==
          geo.metrics[static_cast<std::size_t>(a)].christoffel());

  // zeroed coefficients give flat connections that disagree with Levi-Civita
  bracket_file broken = load_bracket(fixture("broken_a2.json"));
  CHECK(!derive_geometry(broken.bracket).levi_civita_consistent);
}

TEST_CASE("Obstruction tensors of the torus bracket") {
  hydro_bracket B = torus_bracket(2);
  obstruction_set obs = obstructions(B);
  REQUIRE(obs.raised.count({1, 2}) == 1);
  REQUIRE(obs.mixed.count({2, 1}) == 1);
  varset v = B.vars();

  const tensor_field& R = obs.raised.at({1, 2});
  CHECK(R.at({0, 0, 1}) == E(v, "u1"));    // T^{112,12} = u1
  CHECK(R.at({0, 1, 0}) == E(v, "-2*u1")); // T^{121,12} = -2u1
  CHECK(R.at({1, 0, 0}) == E(v, "u1"));    // T^{211,12} = u1
  CHECK(!obs.mixed.at({1, 2}).is_zero());

  // the mixed tensor is antisymmetric in the direction pair
  CHECK(obs.mixed.at({1, 2}) == -obs.mixed.at({2, 1}));
}

TEST_CASE("Obstruction tensors of the canonical bracket") {
  hydro_bracket B = canonical_bracket();
  obstruction_set obs = obstructions(B);
  varset v = B.vars();
  const tensor_field& R = obs.raised.at({1, 2});
  CHECK(R.at({1, 0, 0}) == expr::one(v)); // T^{211,12} = 1
  CHECK(R.at({0, 0, 1}) == expr::one(v)); // T^{112,12} = 1
  CHECK(!obs.mixed.at({1, 2}).is_zero());
}

TEST_CASE("Constant brackets carry no obstruction") {
  bracket_file f = load_bracket(fixture("constant_diag23.json"));
  obstruction_set obs = obstructions(f.bracket);
  for (const auto& [key, t] : obs.mixed) CHECK(t.is_zero());
  for (const auto& [key, t] : obs.raised) CHECK(t.is_zero());
}

TEST_CASE("Degenerate metrics are rejected by geometric operations") {
  // for three or more directions every torus metric is degenerate
  hydro_bracket B3 = torus_bracket(3);
  for (int a = 0; a < 3; ++a) CHECK(det(B3.g(a)).is_zero());
  CHECK(verify_poisson(B3).overall); // the relations need no inverse
  CHECK_THROWS_AS(derive_geometry(B3), degenerate_metric);
  CHECK_THROWS_AS(obstructions(B3), degenerate_metric);
  try {
    obstructions(B3);
  } catch (const degenerate_metric& e) {
    CHECK(e.alpha() == 1);
  }
}

TEST_CASE("Flat pencil relations") {
  hydro_bracket B = canonical_bracket();
  relation_report r = verify_flat_pencil_relations(B);
  CHECK(r.overall);
  for (const char* name : {"b1", "b2", "b3", "b4"}) {
    const relation_verdict* rv = r.find(name);
    REQUIRE(rv != nullptr);
    CHECK(rv->pass);
  }
  CHECK(theorem2_crosscheck(B));

  hydro_bracket T = torus_bracket(2);
  CHECK(verify_flat_pencil_relations(T).overall);
  CHECK(theorem2_crosscheck(T));

  // a non-flat metric is refused by name
  varset v = varset::coords(2);
  tensor_field hyp = metric_from(v, {{"u2^2", "0"}, {"0", "u2^2"}});
  CHECK_THROWS_AS(
      verify_flat_pencil_relations(hydro_bracket::from_metrics(v, {hyp})),
      non_flat_metric);
}

TEST_CASE("Bracket accessors") {
  hydro_bracket B = torus_bracket(2);
  CHECK(B.components() == 2);
  CHECK(B.dimension() == 2);
  CHECK(B.vars() == varset::coords(2));
}
