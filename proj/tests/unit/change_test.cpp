#include <doctest.h>

#include <dnb/change.hpp>
#include <dnb/classify.hpp>
#include <dnb/errors.hpp>

#include "../support/helpers.hpp"

using namespace dnb;
using dnbtest::canonical_bracket;
using dnbtest::E;
using dnbtest::metric_from;
using dnbtest::torus_bracket;
using dnbtest::triangular_change;

namespace {
coordinate_change quadratic_change(const varset& v) {
  return coordinate_change(v, {E(v, "(u1^2 - u2^2)/2"), E(v, "(u1 + u2)/2")});
}
} // namespace

TEST_CASE("Jacobian data of the quadratic change") {
  varset v = varset::coords(2);
  coordinate_change phi = quadratic_change(v);
  CHECK(phi.jacobian().at({0, 0}) == E(v, "u1"));
  CHECK(phi.jacobian().at({0, 1}) == E(v, "-u2"));
  CHECK(phi.jacobian().at({1, 0}) == E(v, "1/2"));
  CHECK(phi.jacobian().at({1, 1}) == E(v, "1/2"));
  CHECK(phi.jacobian_det() == E(v, "(u1 + u2)/2"));

  // J * J^{-1} = delta
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      expr s = expr::zero(v);
      for (int k = 0; k < 2; ++k)
        s += phi.jacobian().at({i, k}) * phi.inverse_jacobian().at({k, j});
      CHECK(s == (i == j ? expr::one(v) : expr::zero(v)));
    }

  // Hessian carries the second derivatives, symmetric in the lower slots
  CHECK(phi.hessian().at({0, 0, 0}) == expr::one(v));
  CHECK(phi.hessian().at({0, 1, 1}) == E(v, "-1"));
  CHECK(phi.hessian().at({0, 0, 1}).is_zero());
  CHECK(phi.hessian().at({1, 0, 0}).is_zero());
}

TEST_CASE("Singular maps are rejected") {
  varset v = varset::coords(2);
  CHECK_THROWS_AS(coordinate_change(v, {E(v, "u1 + u2"), E(v, "2*u1 + 2*u2")}),
                  non_invertible_change);
  // a wrong explicit inverse is rejected by composition
  CHECK_THROWS_AS(coordinate_change(v, {E(v, "u1 + 1"), E(v, "u2")},
                                    std::vector<expr>{E(v, "u1"), E(v, "u2")}),
                  error);
}

TEST_CASE("Identity change is neutral") {
  varset v = varset::coords(2);
  coordinate_change ident(v, {E(v, "u1"), E(v, "u2")},
                          std::vector<expr>{E(v, "u1"), E(v, "u2")});
  hydro_bracket B = torus_bracket(2);
  hydro_bracket out = transform(B, ident);
  for (int a = 0; a < 2; ++a) {
    CHECK(out.g(a) == B.g(a));
    CHECK(out.b(a) == B.b(a));
  }
}

TEST_CASE("Linear changes preserve constant form") {
  varset v = varset::coords(2);
  coordinate_change lin(v, {E(v, "u1 + 2*u2"), E(v, "u1 + u2")},
                        std::vector<expr>{E(v, "-u1 + 2*u2"), E(v, "u1 - u2")});
  hydro_bracket B(v,
                  {metric_from(v, {{"2", "0"}, {"0", "3"}}),
                   metric_from(v, {{"1", "1"}, {"1", "-1"}})},
                  {tensor_field(v, {{index_kind::coordinate, variance::upper, 2},
                                    {index_kind::coordinate, variance::upper, 2},
                                    {index_kind::coordinate, variance::lower, 2}}),
                   tensor_field(v, {{index_kind::coordinate, variance::upper, 2},
                                    {index_kind::coordinate, variance::upper, 2},
                                    {index_kind::coordinate, variance::lower, 2}})});
  hydro_bracket out = transform(B, lin);
  for (int a = 0; a < 2; ++a) {
    CHECK(out.b(a).is_zero());
    for (const expr& e : out.g(a).entries()) CHECK(e.is_constant());
  }
  CHECK(out.g(0).at({0, 0}) == E(v, "14")); // J diag(2,3) J^T, first entry
}

TEST_CASE("Quadratic change links the canonical and torus brackets") {
  // with w as a function of u given by the quadratic map, the pullback of
  // the canonical flat pair equals the torus bracket composed with the map
  varset v = varset::coords(2);
  coordinate_change phi = quadratic_change(v);
  hydro_bracket out = transform(canonical_bracket(), phi);
  hydro_bracket torus = torus_bracket(2);
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(out.g(a).at({i, j}) == torus.g(a).at({i, j}).substitute(phi.forward()));
        for (int k = 0; k < 2; ++k)
          CHECK(out.b(a).at({i, j, k}) ==
                torus.b(a).at({i, j, k}).substitute(phi.forward()));
      }
  }
  // the reverse orientation does not reproduce the canonical bracket
  hydro_bracket rev = transform(torus, phi);
  CHECK(rev.g(0).at({0, 0}) != canonical_bracket().g(0).at({0, 0}));
}

TEST_CASE("Transform of the metric alone agrees") {
  varset v = varset::coords(2);
  coordinate_change phi = triangular_change(v, 31);
  hydro_bracket B = canonical_bracket();
  hydro_bracket out = transform(B, phi);
  for (int a = 0; a < 2; ++a) CHECK(out.g(a) == transform_metric(B.g(a), phi));
}

TEST_CASE("Composition is functorial") {
  varset v = varset::coords(2);
  coordinate_change phi = triangular_change(v, 41);
  coordinate_change psi = triangular_change(v, 42);
  coordinate_change both = phi.then(psi);
  REQUIRE(both.inverse().has_value());

  hydro_bracket B = canonical_bracket();
  hydro_bracket two_step = transform(transform(B, phi), psi);
  hydro_bracket one_step = transform(B, both);
  for (int a = 0; a < 2; ++a) {
    CHECK(two_step.g(a) == one_step.g(a));
    CHECK(two_step.b(a) == one_step.b(a));
  }
}

TEST_CASE("Relations survive changes carrying an inverse") {
  varset v = varset::coords(2);
  hydro_bracket B = torus_bracket(2);
  for (std::uint64_t seed : {51ULL, 52ULL, 53ULL}) {
    coordinate_change phi = triangular_change(v, seed);
    hydro_bracket out = transform(B, phi);
    CHECK(verify_poisson(out).overall);
    CHECK(is_constant_reducible(out).kind == reducibility_kind::obstructed);
  }
}

TEST_CASE("Obstruction tensors transform tensorially") {
  varset v = varset::coords(2);
  hydro_bracket B = torus_bracket(2);
  obstruction_set obs = obstructions(B);
  for (std::uint64_t seed : {61ULL, 62ULL}) {
    coordinate_change phi = triangular_change(v, seed);
    obstruction_set obs2 = obstructions(transform(B, phi));
    const tensor_field& J = phi.jacobian();
    const tensor_field& Ji = phi.inverse_jacobian();
    const tensor_field& T = obs.mixed.at({1, 2});
    const tensor_field& T2 = obs2.mixed.at({1, 2});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          expr rhs = expr::zero(v);
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q)
              for (int r = 0; r < 2; ++r)
                rhs += J.at({i, p}) * T.at({p, q, r}) * Ji.at({q, j}) * Ji.at({r, k});
          CHECK(T2.at({i, j, k}).substitute(phi.forward()) == rhs);
        }
  }
}

TEST_CASE("Composition applies the outer map second") {
  varset v = varset::coords(2);
  coordinate_change phi(v, {E(v, "u1 + 1"), E(v, "u2")},
                        std::vector<expr>{E(v, "u1 - 1"), E(v, "u2")});
  coordinate_change psi(v, {E(v, "2*u1"), E(v, "u2")},
                        std::vector<expr>{E(v, "u1/2"), E(v, "u2")});
  coordinate_change both = phi.then(psi);
  CHECK(both.forward()[0] == E(v, "2*u1 + 2")); // psi(phi(u))
  REQUIRE(both.inverse().has_value());
  CHECK((*both.inverse())[0] == E(v, "u1/2 - 1"));
}
