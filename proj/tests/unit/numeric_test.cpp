#include <doctest.h>

#include <dnb/io.hpp>
#include <dnb/numeric_check.hpp>

#include "../support/helpers.hpp"

using namespace dnb;
using dnbtest::canonical_bracket;
using dnbtest::fixture;
using dnbtest::metric_from;
using dnbtest::torus_bracket;

TEST_CASE("Metric jets agree with symbolic geometry") {
  varset v = varset::coords(2);
  for (const auto& rows : {std::vector<std::vector<std::string>>{
                               {"2*u2", "u1 + u2"}, {"u1 + u2", "2*u1"}},
                           {{"u2^2", "0"}, {"0", "u2^2"}},
                           {{"u1", "0"}, {"0", "u2"}}}) {
    metric_data md = metric_data::from_contravariant(metric_from(v, rows));
    oracle_result r = metric_jet_crosscheck(md, 20, 5);
    CHECK(r.points == 20);
    CHECK(r.max_rel_err <= 1e-9);
  }
}

TEST_CASE("Obstruction tensors agree with plain numerics") {
  for (const char* name : {"torus_n2.json", "canonical_c6.json", "constant_diag23.json"}) {
    bracket_file f = load_bracket(fixture(name));
    oracle_result r = obstruction_jet_crosscheck(f.bracket, 20, 5);
    CHECK(r.points == 20);
    CHECK(r.max_rel_err <= 1e-9);
  }
}

TEST_CASE("Nijenhuis tensor agrees with jets") {
  varset v = varset::coords(2);
  metric_pair diag(metric_from(v, {{"u1", "0"}, {"0", "u2"}}),
                   dnbtest::identity_metric(v, 2));
  CHECK(nijenhuis_jet_crosscheck(diag, 20, 5).max_rel_err <= 1e-9);

  // pairs with a nonzero Nijenhuis tensor are cross-checked too
  metric_pair cross(metric_from(v, {{"u2 + 1", "0"}, {"0", "1"}}),
                    dnbtest::identity_metric(v, 2));
  CHECK(nijenhuis_jet_crosscheck(cross, 20, 5).max_rel_err <= 1e-9);

  hydro_bracket B = canonical_bracket();
  metric_pair canon(B.g(1), B.g(0));
  CHECK(nijenhuis_jet_crosscheck(canon, 20, 5).max_rel_err <= 1e-9);
}

TEST_CASE("Oracles are deterministic per seed") {
  hydro_bracket B = torus_bracket(2);
  oracle_result a = obstruction_jet_crosscheck(B, 10, 11);
  oracle_result b = obstruction_jet_crosscheck(B, 10, 11);
  CHECK(a.max_rel_err == b.max_rel_err);
  CHECK(a.points == b.points);

  metric_data md = derive_geometry(B).metrics[0];
  CHECK(metric_jet_crosscheck(md, 10, 3).max_rel_err ==
        metric_jet_crosscheck(md, 10, 3).max_rel_err);
}

TEST_CASE("Different seeds still agree with the symbols") {
  hydro_bracket B = torus_bracket(2);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL})
    CHECK(obstruction_jet_crosscheck(B, 10, seed).max_rel_err <= 1e-9);
}
