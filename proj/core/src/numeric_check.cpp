#include <dnb/numeric_check.hpp>

#include <dnb/errors.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

namespace dnb {

namespace {

void track(oracle_result& r, double sym, double num) {
  const double scale = std::max({1.0, std::fabs(sym), std::fabs(num)});
  r.max_rel_err = std::max(r.max_rel_err, std::fabs(sym - num) / scale);
}

//! Random rational coordinate p/q with small height, as a double.
double random_coordinate(std::mt19937_64& rng) {
  const int p = static_cast<int>(rng() % 41) - 20;
  const int q = 1 + static_cast<int>(rng() % 8);
  return static_cast<double>(p) / static_cast<double>(q);
}

std::vector<double> random_point(std::mt19937_64& rng, std::size_t ncoords) {
  std::vector<double> x(ncoords);
  for (auto& v : x) v = random_coordinate(rng);
  return x;
}

//! Numeric inverse by Gaussian elimination with partial pivoting; throws
//! division_by_zero near singular value matrices so the caller can skip
//! the sample point.
std::vector<std::vector<double>> invert_values(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    if (std::fabs(m[piv][c]) < 1e-9)
      throw division_by_zero("value matrix numerically singular");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    const double lead = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= lead;
      inv[c][k] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

//! Runs `work` at up to npoints sampled points, skipping samples that hit
//! poles or numerically singular matrices.
template <class Work>
oracle_result sample_loop(const varset& V, int npoints, std::uint64_t seed, Work work) {
  oracle_result out;
  std::mt19937_64 rng(seed);
  int attempts = 0;
  const int max_attempts = 200 * npoints;
  while (out.points < npoints && attempts < max_attempts) {
    ++attempts;
    std::vector<double> x = random_point(rng, V.size());
    try {
      work(x, out);
    } catch (const division_by_zero&) {
      continue;
    }
    ++out.points;
  }
  if (out.points < npoints)
    throw error("could not sample enough points away from singularities");
  return out;
}

} // namespace

oracle_result metric_jet_crosscheck(const metric_data& md, int npoints, std::uint64_t seed) {
  const int N = md.dim();
  const varset& V = md.vars();

  return sample_loop(V, npoints, seed, [&](const std::vector<double>& x, oracle_result& out) {
    oracle_result local;
    // Covariant metric values and exact first derivatives from jets.
    std::vector<std::vector<double>> h(N, std::vector<double>(N));
    std::vector<std::vector<std::vector<double>>> dh(
        N, std::vector<std::vector<double>>(N, std::vector<double>(N)));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const jet2 J = md.lower().at({i, j}).eval_jet(x);
        h[i][j] = J.value();
        for (int k = 0; k < N; ++k) dh[i][j][k] = J.grad(static_cast<std::size_t>(k));
      }
    const std::vector<std::vector<double>> up = invert_values(h);
    // Independent check of the exact inversion.
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        track(local, md.upper().at({i, j}).eval_double(x), up[i][j]);
    // Christoffel symbols re-derived from the jet data.
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double acc = 0;
          for (int s = 0; s < N; ++s)
            acc += 0.5 * up[k][s] * (dh[s][j][i] + dh[s][i][j] - dh[i][j][s]);
          track(local, md.christoffel().at({k, i, j}).eval_double(x), acc);
        }
    // Curvature re-derived from jets of the Christoffel symbols.
    std::vector<std::vector<std::vector<double>>> g0(
        N, std::vector<std::vector<double>>(N, std::vector<double>(N)));
    std::vector<std::vector<std::vector<std::vector<double>>>> dg(
        N, std::vector<std::vector<std::vector<double>>>(
               N, std::vector<std::vector<double>>(N, std::vector<double>(N))));
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          const jet2 J = md.christoffel().at({k, i, j}).eval_jet(x);
          g0[k][i][j] = J.value();
          for (int q = 0; q < N; ++q) dg[k][i][j][q] = J.grad(static_cast<std::size_t>(q));
        }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          for (int l = 0; l < N; ++l) {
            double acc = dg[i][l][j][k] - dg[i][k][j][l];
            for (int s = 0; s < N; ++s)
              acc += g0[i][k][s] * g0[s][l][j] - g0[i][l][s] * g0[s][k][j];
            track(local, md.curvature().at({i, j, k, l}).eval_double(x), acc);
          }
    out.max_rel_err = std::max(out.max_rel_err, local.max_rel_err);
  });
}

oracle_result obstruction_jet_crosscheck(const hydro_bracket& B, int npoints,
                                         std::uint64_t seed) {
  const int N = B.components(), n = B.dimension();
  const varset& V = B.vars();
  const obstruction_set obs = obstructions(B);

  return sample_loop(V, npoints, seed, [&](const std::vector<double>& x, oracle_result& out) {
    oracle_result local;
    // Bracket connections from numeric metric inverses and b values.
    std::vector<std::vector<std::vector<std::vector<double>>>> conn(
        n, std::vector<std::vector<std::vector<double>>>(
               N, std::vector<std::vector<double>>(N, std::vector<double>(N))));
    std::vector<std::vector<std::vector<double>>> gval(
        n, std::vector<std::vector<double>>(N, std::vector<double>(N)));
    for (int a = 0; a < n; ++a) {
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) gval[a][i][j] = B.g(a).at({i, j}).eval_double(x);
      const std::vector<std::vector<double>> lower = invert_values(gval[a]);
      for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            double acc = 0;
            for (int s = 0; s < N; ++s)
              acc += lower[i][s] * B.b(a).at({s, k, j}).eval_double(x);
            conn[a][k][i][j] = -acc;
          }
    }
    for (const auto& [key, mixed] : obs.mixed) {
      const int a = key.first - 1, be = key.second - 1;
      std::vector<std::vector<std::vector<double>>> mval(
          N, std::vector<std::vector<double>>(N, std::vector<double>(N)));
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          for (int k = 0; k < N; ++k) {
            mval[i][j][k] = conn[be][i][j][k] - conn[a][i][j][k];
            track(local, mixed.at({i, j, k}).eval_double(x), mval[i][j][k]);
          }
      const tensor_field& raised = obs.raised.at(key);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          for (int k = 0; k < N; ++k) {
            double acc = 0;
            for (int r = 0; r < N; ++r)
              for (int s = 0; s < N; ++s)
                acc += gval[be][k][s] * gval[a][i][r] * mval[j][r][s];
            track(local, raised.at({i, j, k}).eval_double(x), acc);
          }
    }
    out.max_rel_err = std::max(out.max_rel_err, local.max_rel_err);
  });
}

oracle_result nijenhuis_jet_crosscheck(const metric_pair& p, int npoints,
                                       std::uint64_t seed) {
  const int N = p.dim();
  const varset& V = p.vars();
  const tensor_field& v = p.affinor();
  const tensor_field nij = nijenhuis(p);

  return sample_loop(V, npoints, seed, [&](const std::vector<double>& x, oracle_result& out) {
    oracle_result local;
    std::vector<std::vector<double>> vv(N, std::vector<double>(N));
    std::vector<std::vector<std::vector<double>>> dv(
        N, std::vector<std::vector<double>>(N, std::vector<double>(N)));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const jet2 J = v.at({i, j}).eval_jet(x);
        vv[i][j] = J.value();
        for (int k = 0; k < N; ++k) dv[i][j][k] = J.grad(static_cast<std::size_t>(k));
      }
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          double acc = 0;
          for (int s = 0; s < N; ++s) {
            acc += vv[s][i] * dv[k][j][s] - vv[s][j] * dv[k][i][s];
            acc += vv[k][s] * (dv[s][i][j] - dv[s][j][i]);
          }
          track(local, nij.at({k, i, j}).eval_double(x), acc);
        }
    out.max_rel_err = std::max(out.max_rel_err, local.max_rel_err);
  });
}

} // namespace dnb
