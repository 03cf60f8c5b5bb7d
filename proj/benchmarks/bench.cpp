#include <benchmark/benchmark.h>

#include <dnb/bracket.hpp>
#include <dnb/change.hpp>
#include <dnb/compat.hpp>
#include <dnb/geometry.hpp>
#include <dnb/poly.hpp>

#include <vector>

using namespace dnb;

namespace {

hydro_bracket torus_bracket(int n) {
  varset v = varset::coords(static_cast<std::size_t>(n));
  std::vector<tensor_field> gs, bs;
  for (int a = 0; a < n; ++a) {
    tensor_field g(v, {{index_kind::coordinate, variance::upper, n},
                       {index_kind::coordinate, variance::upper, n}});
    tensor_field b(v, {{index_kind::coordinate, variance::upper, n},
                       {index_kind::coordinate, variance::upper, n},
                       {index_kind::coordinate, variance::lower, n}});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        expr e = expr::zero(v);
        if (j == a) e += expr::variable(v, static_cast<std::size_t>(i));
        if (i == a) e += expr::variable(v, static_cast<std::size_t>(j));
        g.at({i, j}) = e;
        if (j == a) b.at({i, j, i}) = expr::one(v);
      }
    gs.push_back(g);
    bs.push_back(b);
  }
  return hydro_bracket(v, std::move(gs), std::move(bs));
}

tensor_field canonical_second_metric(const varset& v) {
  tensor_field g(v, {{index_kind::coordinate, variance::upper, 2},
                     {index_kind::coordinate, variance::upper, 2}});
  g.at({0, 0}) = expr::parse("2*u2", v);
  g.at({0, 1}) = expr::parse("u1 + u2", v);
  g.at({1, 0}) = expr::parse("u1 + u2", v);
  g.at({1, 1}) = expr::parse("2*u1", v);
  return g;
}

hydro_bracket canonical_bracket() {
  varset v = varset::coords(2);
  tensor_field g1(v, {{index_kind::coordinate, variance::upper, 2},
                      {index_kind::coordinate, variance::upper, 2}});
  g1.at({0, 0}) = expr::one(v);
  g1.at({1, 1}) = expr::parse("-1", v);
  return hydro_bracket::from_metrics(v, {g1, canonical_second_metric(v)});
}

void poly_product(benchmark::State& state) {
  varset v = varset::coords(3);
  expr a = expr::parse("(u1 + 2*u2 - u3)^4", v);
  expr b = expr::parse("(u1 - u2 + 3*u3)^4", v);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(poly_product);

void poly_gcd_shared_factor(benchmark::State& state) {
  varset v = varset::coords(2);
  poly g = expr::parse("(u1 + u2)^3*(u1 - 2*u2)", v).num();
  poly a = g * expr::parse("(u1^2 + u2 + 1)^2", v).num();
  poly b = g * expr::parse("(u2^2 - u1 + 2)^2", v).num();
  for (auto _ : state) benchmark::DoNotOptimize(poly_gcd(a, b));
}
BENCHMARK(poly_gcd_shared_factor);

void verify_torus(benchmark::State& state) {
  hydro_bracket B = torus_bracket(2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_poisson(B));
}
BENCHMARK(verify_torus);

void levi_civita_curvature(benchmark::State& state) {
  varset v = varset::coords(2);
  tensor_field g = canonical_second_metric(v);
  for (auto _ : state) {
    metric_data md = metric_data::from_contravariant(g);
    benchmark::DoNotOptimize(md.curvature());
  }
}
BENCHMARK(levi_civita_curvature);

void obstruction_tensors(benchmark::State& state) {
  hydro_bracket B = torus_bracket(2);
  for (auto _ : state) benchmark::DoNotOptimize(obstructions(B));
}
BENCHMARK(obstruction_tensors);

void transform_quadratic(benchmark::State& state) {
  hydro_bracket B = canonical_bracket();
  varset v = B.vars();
  coordinate_change phi(v, {expr::parse("(u1^2 - u2^2)/2", v),
                            expr::parse("(u1 + u2)/2", v)});
  for (auto _ : state) benchmark::DoNotOptimize(transform(B, phi));
}
BENCHMARK(transform_quadratic);

void pencil_direct(benchmark::State& state) {
  hydro_bracket B = canonical_bracket();
  for (auto _ : state) {
    metric_pair p(B.g(1), B.g(0));
    benchmark::DoNotOptimize(pencil_direct_check(p));
  }
}
BENCHMARK(pencil_direct);

} // namespace

BENCHMARK_MAIN();
