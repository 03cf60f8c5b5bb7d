#include <dnb/geometry.hpp>

namespace dnb {

namespace {

void check_symmetric(const tensor_field& g, int alpha) {
  int n = g.extent(0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.at({i, j}) != g.at({j, i}))
        throw error("metric" + (alpha > 0 ? " alpha=" + std::to_string(alpha) : "") +
                    " is not symmetric at entry (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
}

} // namespace

metric_data metric_data::from_contravariant(const tensor_field& g_upper, int alpha) {
  if (g_upper.rank() != 2 || g_upper.shape()[0].kind != index_kind::coordinate ||
      g_upper.shape()[0].var != variance::upper || g_upper.shape()[1].var != variance::upper)
    throw error("metric must be a rank-2 contravariant coordinate tensor");
  check_symmetric(g_upper, alpha);

  auto st = std::make_shared<state>();
  st->alpha = alpha;
  st->upper = g_upper;
  st->lower = invert(g_upper, "metric", alpha);

  const varset& V = g_upper.vars();
  const int n = g_upper.extent(0);
  const index_spec up{index_kind::coordinate, variance::upper, n};
  const index_spec lo{index_kind::coordinate, variance::lower, n};

  // Gamma^k_{ij} = 1/2 g^{ks} (d_i g_{sj} + d_j g_{si} - d_s g_{ij})
  tensor_field gamma(V, {up, lo, lo});
  const rational half(1, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        expr acc = expr::zero(V);
        for (int s = 0; s < n; ++s) {
          expr inner = st->lower.at({s, j}).diff(i) + st->lower.at({s, i}).diff(j) -
                       st->lower.at({i, j}).diff(s);
          acc += st->upper.at({k, s}) * inner;
        }
        gamma.at({k, i, j}) = acc.scaled(half);
        gamma.at({k, j, i}) = gamma.at({k, i, j});
      }
  st->christoffel = std::move(gamma);

  // Self-check: nabla_k g_{ij} = d_k g_{ij} - Gamma^s_{ki} g_{sj} - Gamma^s_{kj} g_{is} = 0.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        expr r = st->lower.at({i, j}).diff(k);
        for (int s = 0; s < n; ++s)
          r -= st->christoffel.at({s, k, i}) * st->lower.at({s, j}) +
               st->christoffel.at({s, k, j}) * st->lower.at({i, s});
        if (!r.is_zero())
          throw engine_error("metric compatibility self-check failed at (" +
                             std::to_string(k + 1) + "," + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
      }

  metric_data m;
  m.s_ = std::move(st);
  return m;
}

const tensor_field& metric_data::curvature() const {
  std::call_once(s_->curvature_once, [this] {
    const varset& V = s_->upper.vars();
    const int n = s_->upper.extent(0);
    const index_spec up{index_kind::coordinate, variance::upper, n};
    const index_spec lo{index_kind::coordinate, variance::lower, n};
    const tensor_field& G = s_->christoffel;

    // R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
    //           + Gamma^i_{ks} Gamma^s_{lj} - Gamma^i_{ls} Gamma^s_{kj}
    tensor_field R(V, {up, lo, lo, lo});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l) {
            expr r = G.at({i, l, j}).diff(k) - G.at({i, k, j}).diff(l);
            for (int s = 0; s < n; ++s)
              r += G.at({i, k, s}) * G.at({s, l, j}) - G.at({i, l, s}) * G.at({s, k, j});
            R.at({i, j, k, l}) = r;
            R.at({i, j, l, k}) = -r;
          }
    s_->curvature = std::move(R);
  });
  return *s_->curvature;
}

tensor_field levi_civita(const tensor_field& g_upper, int alpha) {
  return metric_data::from_contravariant(g_upper, alpha).christoffel();
}

tensor_field b_from_metric(const metric_data& m) {
  const varset& V = m.vars();
  const int n = m.dim();
  const index_spec up{index_kind::coordinate, variance::upper, n};
  const index_spec lo{index_kind::coordinate, variance::lower, n};

  tensor_field b(V, {up, up, lo});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        expr acc = expr::zero(V);
        for (int s = 0; s < n; ++s)
          acc += m.upper().at({i, s}) * m.christoffel().at({j, s, k});
        b.at({i, j, k}) = -acc;
      }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (m.upper().at({i, j}).diff(k) != b.at({i, j, k}) + b.at({j, i, k}))
          throw engine_error("metric-derived linear coefficients fail their defining relation");
  return b;
}

tensor_field covariant_derivative_3up(const tensor_field& t, const metric_data& m) {
  const varset& V = t.vars();
  const int n = m.dim();
  const index_spec up{index_kind::coordinate, variance::upper, n};
  const index_spec lo{index_kind::coordinate, variance::lower, n};
  if (t.rank() != 3) throw engine_error("covariant_derivative_3up requires rank 3");
  const tensor_field& G = m.christoffel();

  tensor_field out(V, {lo, up, up, up});
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          expr acc = t.at({i, j, k}).diff(r);
          for (int s = 0; s < n; ++s)
            acc += G.at({i, r, s}) * t.at({s, j, k}) + G.at({j, r, s}) * t.at({i, s, k}) +
                   G.at({k, r, s}) * t.at({i, j, s});
          out.at({r, i, j, k}) = acc;
        }
  return out;
}

} // namespace dnb
