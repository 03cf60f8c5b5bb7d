#ifndef DNB_TESTS_HELPERS_HPP
#define DNB_TESTS_HELPERS_HPP

#include <dnb/bracket.hpp>
#include <dnb/change.hpp>
#include <dnb/tensor.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dnbtest {

using namespace dnb;

inline std::string fixture(const std::string& name) {
  return std::string(DNB_FIXTURE_DIR "/") + name;
}

inline expr E(const varset& v, const std::string& text) { return expr::parse(text, v); }

//! Rank-2 contravariant coordinate tensor from rows of expression text.
inline tensor_field metric_from(const varset& v,
                                const std::vector<std::vector<std::string>>& rows) {
  int N = static_cast<int>(rows.size());
  tensor_field g(v, {{index_kind::coordinate, variance::upper, N},
                     {index_kind::coordinate, variance::upper, N}});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g.at({i, j}) = E(v, rows[i][j]);
  return g;
}

inline tensor_field identity_metric(const varset& v, int N) {
  tensor_field g(v, {{index_kind::coordinate, variance::upper, N},
                     {index_kind::coordinate, variance::upper, N}});
  for (int i = 0; i < N; ++i) g.at({i, i}) = expr::one(v);
  return g;
}

//! g^{ij,a} = u^i delta^{ja} + u^j delta^{ia}, b^{ij,a}_k = delta^i_k delta^{ja},
//! with N = n. Linear in the fields; degenerate metrics for n > 2.
inline hydro_bracket torus_bracket(int n) {
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
        for (int k = 0; k < n; ++k)
          if (i == k && j == a) b.at({i, j, k}) = expr::one(v);
      }
    gs.push_back(g);
    bs.push_back(b);
  }
  return hydro_bracket(v, std::move(gs), std::move(bs));
}

//! The flat-metric pair g1 = diag(1,-1), g2 = [[2u2, u1+u2],[u1+u2, 2u1]]
//! with coefficients derived from the metrics.
inline hydro_bracket canonical_bracket() {
  varset v = varset::coords(2);
  tensor_field g1 = metric_from(v, {{"1", "0"}, {"0", "-1"}});
  tensor_field g2 = metric_from(v, {{"2*u2", "u1 + u2"}, {"u1 + u2", "2*u1"}});
  return hydro_bracket::from_metrics(v, {g1, g2});
}

//! Seeded invertible triangular polynomial change with an exact inverse:
//! w^i = u^i + f^i(u^{i+1}, ..., u^N), inverted by back substitution. The
//! tail polynomials have small integer coefficients and degree <= 2 per
//! variable; the last component is a plain constant shift.
inline coordinate_change triangular_change(const varset& v, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto small = [&]() { return static_cast<int>(rng() % 5) - 2; };
  const std::size_t N = v.size();
  std::vector<expr> fw(N), tail(N);
  for (std::size_t i = 0; i < N; ++i) {
    expr f = expr::zero(v);
    for (std::size_t j = i + 1; j < N; ++j) {
      expr uj = expr::variable(v, j);
      f += uj.scaled(rational(small())) + (uj * uj).scaled(rational(small()));
    }
    f += expr::constant(v, rational(small()));
    tail[i] = f;
    fw[i] = expr::variable(v, i) + f;
  }
  std::vector<expr> inv(N);
  for (std::size_t k = N; k-- > 0;) {
    std::vector<expr> s;
    s.reserve(N);
    for (std::size_t j = 0; j < N; ++j)
      s.push_back(j > k ? inv[j] : expr::variable(v, j));
    inv[k] = expr::variable(v, k) - tail[k].substitute(s);
  }
  return coordinate_change(v, std::move(fw), std::move(inv));
}

//! Seeded constant symmetric metric with nonvanishing determinant.
inline tensor_field random_constant_metric(const varset& v, int N, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    tensor_field g(v, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::upper, N}});
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        expr c = expr::constant(v, rational(static_cast<int>(rng() % 7) - 3));
        g.at({i, j}) = c;
        g.at({j, i}) = c;
      }
    if (!det(g).is_zero()) return g;
  }
}

} // namespace dnbtest

#endif
