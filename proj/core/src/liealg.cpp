#include <dnb/liealg.hpp>

#include <dnb/errors.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace dnb {

linear_bracket_data linear_bracket_data::zeros(int N, int n) {
  linear_bracket_data L;
  L.N = N;
  L.n = n;
  L.b0.assign(
      static_cast<std::size_t>(n),
      std::vector<std::vector<std::vector<rational>>>(
          static_cast<std::size_t>(N),
          std::vector<std::vector<rational>>(
              static_cast<std::size_t>(N),
              std::vector<rational>(static_cast<std::size_t>(N), rational(0)))));
  L.g0.assign(static_cast<std::size_t>(n),
              std::vector<std::vector<rational>>(
                  static_cast<std::size_t>(N),
                  std::vector<rational>(static_cast<std::size_t>(N), rational(0))));
  return L;
}

hydro_bracket to_bracket(const linear_bracket_data& L) {
  const varset V = varset::coords(static_cast<std::size_t>(L.N));
  const index_spec up{index_kind::coordinate, variance::upper, L.N};
  const index_spec lo{index_kind::coordinate, variance::lower, L.N};

  std::vector<tensor_field> gs, bs;
  for (int a = 0; a < L.n; ++a) {
    tensor_field g(V, {up, up});
    tensor_field b(V, {up, up, lo});
    for (int i = 0; i < L.N; ++i)
      for (int j = 0; j < L.N; ++j) {
        expr e = expr::constant(V, L.g0[a][i][j]);
        for (int k = 0; k < L.N; ++k) {
          const rational c = L.b(a, i, j, k) + L.b(a, j, i, k);
          if (c != 0) e = e + expr::variable(V, static_cast<std::size_t>(k)).scaled(c);
          b.at({i, j, k}) = expr::constant(V, L.b(a, i, j, k));
        }
        g.at({i, j}) = e;
      }
    gs.push_back(std::move(g));
    bs.push_back(std::move(b));
  }
  return hydro_bracket(V, std::move(gs), std::move(bs));
}

std::optional<linear_bracket_data> check_linear_form(const hydro_bracket& B) {
  const int N = B.components(), n = B.dimension();
  linear_bracket_data L = linear_bracket_data::zeros(N, n);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          const expr& e = B.b(a).at({i, j, k});
          if (!e.is_constant()) return std::nullopt;
          L.b(a, i, j, k) = e.constant_value();
        }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        expr rest = B.g(a).at({i, j});
        for (int k = 0; k < N; ++k) {
          const rational c = L.b(a, i, j, k) + L.b(a, j, i, k);
          if (c != 0)
            rest = rest - expr::variable(B.vars(), static_cast<std::size_t>(k)).scaled(c);
        }
        if (!rest.is_constant()) return std::nullopt;
        L.g0[a][i][j] = rest.constant_value();
      }
  }
  return L;
}

relation_report jacobi_check(const linear_bracket_data& L) {
  linear_bracket_data H = L;
  for (auto& block : H.g0)
    for (auto& row : block)
      for (auto& v : row) v = 0;
  return verify_poisson(to_bracket(H));
}

cocycle_report cocycle_check(const linear_bracket_data& L) {
  cocycle_report out;
  out.full = verify_poisson(to_bracket(L));
  bool skew = true, closed = true;
  for (const auto& v : out.full.verdicts) {
    if (v.relation == "a1" || v.relation == "a2")
      skew = skew && v.pass;
    else
      closed = closed && v.pass;
  }
  out.skew = skew;
  out.closed = closed;

  // Exact Gaussian elimination for (b^{ij,a}_k + b^{ji,a}_k) c^k = g0^{ij,a}.
  const int N = L.N;
  std::vector<std::vector<rational>> rows;
  for (int a = 0; a < L.n; ++a)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        std::vector<rational> row(static_cast<std::size_t>(N) + 1, rational(0));
        for (int k = 0; k < N; ++k) row[static_cast<std::size_t>(k)] = L.b(a, i, j, k) + L.b(a, j, i, k);
        row[static_cast<std::size_t>(N)] = L.g0[a][i][j];
        rows.push_back(std::move(row));
      }

  std::size_t rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < N && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][static_cast<std::size_t>(col)] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    const rational lead = rows[rank][static_cast<std::size_t>(col)];
    for (auto& v : rows[rank]) v /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const rational f = rows[r][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (std::size_t c = 0; c <= static_cast<std::size_t>(N); ++c)
        rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  bool feasible = true;
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][static_cast<std::size_t>(N)] != 0) feasible = false;
  if (feasible) {
    std::vector<rational> c(static_cast<std::size_t>(N), rational(0));
    for (std::size_t r = 0; r < rank; ++r)
      c[static_cast<std::size_t>(pivot_col[r])] = rows[r][static_cast<std::size_t>(N)];
    out.coboundary_shift = std::move(c);
  }
  return out;
}

std::vector<rational> multiply(const linear_bracket_data& L, int a,
                               const std::vector<rational>& x,
                               const std::vector<rational>& y) {
  if (a < 1 || a > L.n) throw error("direction index out of range");
  if (x.size() != static_cast<std::size_t>(L.N) || y.size() != x.size())
    throw error("multiply needs two vectors of length N");
  std::vector<rational> out(static_cast<std::size_t>(L.N), rational(0));
  for (int i = 0; i < L.N; ++i)
    for (int j = 0; j < L.N; ++j)
      for (int k = 0; k < L.N; ++k)
        out[static_cast<std::size_t>(k)] +=
            x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * L.b(a - 1, i, j, k);
  return out;
}

namespace {

//! One covector component as a trigonometric polynomial on the n-torus.
struct trig_component {
  struct harmonic {
    std::vector<int> k;
    double c, s;
  };
  std::vector<harmonic> hs;

  double phase(const harmonic& h, const std::vector<double>& x) const {
    double p = 0;
    for (std::size_t d = 0; d < x.size(); ++d) p += h.k[d] * x[d];
    return p;
  }
  double value(const std::vector<double>& x) const {
    double v = 0;
    for (const auto& h : hs) {
      const double p = phase(h, x);
      v += h.c * std::cos(p) + h.s * std::sin(p);
    }
    return v;
  }
  double d1(int a, const std::vector<double>& x) const {
    double v = 0;
    for (const auto& h : hs) {
      const double p = phase(h, x);
      v += h.k[static_cast<std::size_t>(a)] * (-h.c * std::sin(p) + h.s * std::cos(p));
    }
    return v;
  }
  double d2(int a, int b, const std::vector<double>& x) const {
    double v = 0;
    for (const auto& h : hs) {
      const double p = phase(h, x);
      v += h.k[static_cast<std::size_t>(a)] * h.k[static_cast<std::size_t>(b)] *
           (-h.c * std::cos(p) - h.s * std::sin(p));
    }
    return v;
  }
};

//! Uniform doubles derived from raw engine words; avoids distribution
//! implementation differences across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

trig_component random_component(std::mt19937_64& rng, int n) {
  trig_component f;
  for (int h = 0; h < 3; ++h) {
    trig_component::harmonic hh;
    for (int d = 0; d < n; ++d)
      hh.k.push_back(static_cast<int>(rng() % 5) - 2);
    hh.c = 2 * uniform01(rng) - 1;
    hh.s = 2 * uniform01(rng) - 1;
    f.hs.push_back(std::move(hh));
  }
  return f;
}

using field = std::vector<trig_component>;

//! Value and first derivatives of [A, B]_k at x:
//!   [A,B]_k = b^{ij,a}_k ((B_i)_a A_j - B_j (A_i)_a).
struct bracket_point {
  std::vector<double> val, d1; // d1 flattened (k * n + a)
};

bracket_point eval_bracket(const linear_bracket_data& L, const field& A,
                           const field& B, const std::vector<double>& x,
                           const std::vector<std::vector<double>>& bflat) {
  const int N = L.N, n = L.n;
  std::vector<double> Av(N), Bv(N);
  std::vector<double> Ad(static_cast<std::size_t>(N) * n), Bd(static_cast<std::size_t>(N) * n);
  std::vector<double> Add(static_cast<std::size_t>(N) * n * n), Bdd(static_cast<std::size_t>(N) * n * n);
  for (int i = 0; i < N; ++i) {
    Av[i] = A[i].value(x);
    Bv[i] = B[i].value(x);
    for (int a = 0; a < n; ++a) {
      Ad[static_cast<std::size_t>(i) * n + a] = A[i].d1(a, x);
      Bd[static_cast<std::size_t>(i) * n + a] = B[i].d1(a, x);
      for (int c = 0; c < n; ++c) {
        Add[(static_cast<std::size_t>(i) * n + a) * n + c] = A[i].d2(a, c, x);
        Bdd[(static_cast<std::size_t>(i) * n + a) * n + c] = B[i].d2(a, c, x);
      }
    }
  }
  bracket_point out;
  out.val.assign(static_cast<std::size_t>(N), 0.0);
  out.d1.assign(static_cast<std::size_t>(N) * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          const double w = bflat[a][(static_cast<std::size_t>(i) * N + j) * N + k];
          if (w == 0.0) continue;
          out.val[k] += w * (Bd[static_cast<std::size_t>(i) * n + a] * Av[j] -
                             Bv[j] * Ad[static_cast<std::size_t>(i) * n + a]);
          for (int c = 0; c < n; ++c)
            out.d1[static_cast<std::size_t>(k) * n + c] +=
                w * (Bdd[(static_cast<std::size_t>(i) * n + a) * n + c] * Av[j] +
                     Bd[static_cast<std::size_t>(i) * n + a] * Ad[static_cast<std::size_t>(j) * n + c] -
                     Bd[static_cast<std::size_t>(j) * n + c] * Ad[static_cast<std::size_t>(i) * n + a] -
                     Bv[j] * Add[(static_cast<std::size_t>(i) * n + a) * n + c]);
        }
  return out;
}

//! [A, P]_k at x where P is given by precomputed values and derivatives.
std::vector<double> eval_outer(const linear_bracket_data& L, const field& A,
                               const bracket_point& P, const std::vector<double>& x,
                               const std::vector<std::vector<double>>& bflat) {
  const int N = L.N, n = L.n;
  std::vector<double> Av(N);
  std::vector<double> Ad(static_cast<std::size_t>(N) * n);
  for (int i = 0; i < N; ++i) {
    Av[i] = A[i].value(x);
    for (int a = 0; a < n; ++a) Ad[static_cast<std::size_t>(i) * n + a] = A[i].d1(a, x);
  }
  std::vector<double> out(static_cast<std::size_t>(N), 0.0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
          const double w = bflat[a][(static_cast<std::size_t>(i) * N + j) * N + k];
          if (w == 0.0) continue;
          out[k] += w * (P.d1[static_cast<std::size_t>(i) * n + a] * Av[j] -
                         P.val[j] * Ad[static_cast<std::size_t>(i) * n + a]);
        }
  return out;
}

} // namespace

double functional_oracle(const linear_bracket_data& L, int trials, std::uint64_t seed) {
  if (trials < 1) throw error("functional oracle needs at least one trial");
  const int N = L.N, n = L.n;

  std::vector<std::vector<double>> bflat(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    bflat[a].resize(static_cast<std::size_t>(N) * N * N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          bflat[a][(static_cast<std::size_t>(i) * N + j) * N + k] = to_double(L.b(a, i, j, k));
  }

  const int grid = 16;
  int points = 1;
  for (int d = 0; d < n; ++d) points *= grid;

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1));
    field xi, eta, zeta;
    for (int i = 0; i < N; ++i) xi.push_back(random_component(rng, n));
    for (int i = 0; i < N; ++i) eta.push_back(random_component(rng, n));
    for (int i = 0; i < N; ++i) zeta.push_back(random_component(rng, n));

    for (int p = 0; p < points; ++p) {
      std::vector<double> x(static_cast<std::size_t>(n));
      int rem = p;
      for (int d = 0; d < n; ++d) {
        x[static_cast<std::size_t>(d)] = 2.0 * std::numbers::pi * (rem % grid) / grid;
        rem /= grid;
      }
      // [xi,[eta,zeta]] + [eta,[zeta,xi]] + [zeta,[xi,eta]] = 0.
      const bracket_point ez = eval_bracket(L, eta, zeta, x, bflat);
      const bracket_point zx = eval_bracket(L, zeta, xi, x, bflat);
      const bracket_point xe = eval_bracket(L, xi, eta, x, bflat);
      const std::vector<double> t1 = eval_outer(L, xi, ez, x, bflat);
      const std::vector<double> t2 = eval_outer(L, eta, zx, x, bflat);
      const std::vector<double> t3 = eval_outer(L, zeta, xe, x, bflat);
      for (int k = 0; k < N; ++k)
        worst = std::max(worst, std::fabs(t1[k] + t2[k] + t3[k]));
    }
  }
  return worst;
}

} // namespace dnb
