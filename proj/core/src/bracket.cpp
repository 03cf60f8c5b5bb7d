#include <dnb/bracket.hpp>

namespace dnb {

hydro_bracket::hydro_bracket(varset vars, std::vector<tensor_field> g,
                             std::vector<tensor_field> b)
    : vars_(std::move(vars)), g_(std::move(g)), b_(std::move(b)) {
  if (g_.empty()) throw error("bracket needs at least one spatial direction");
  if (g_.size() != b_.size()) throw error("bracket needs one b tensor per metric");
  int N = g_[0].extent(0);
  for (std::size_t a = 0; a < g_.size(); ++a) {
    const tensor_field& g = g_[a];
    const tensor_field& b = b_[a];
    if (g.rank() != 2 || g.extent(0) != N || g.extent(1) != N ||
        g.shape()[0].var != variance::upper || g.shape()[1].var != variance::upper)
      throw error("metric alpha=" + std::to_string(a + 1) + " has a bad shape");
    if (b.rank() != 3 || b.extent(0) != N || b.extent(1) != N || b.extent(2) != N ||
        b.shape()[0].var != variance::upper || b.shape()[1].var != variance::upper ||
        b.shape()[2].var != variance::lower)
      throw error("coefficients alpha=" + std::to_string(a + 1) + " have a bad shape");
  }
}

hydro_bracket hydro_bracket::from_metrics(const varset& vars, std::vector<tensor_field> g) {
  std::vector<tensor_field> b;
  b.reserve(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    b.push_back(b_from_metric(metric_data::from_contravariant(g[a], static_cast<int>(a) + 1)));
  return hydro_bracket(vars, std::move(g), std::move(b));
}

namespace {

//! Shared state for the relation scan: coefficient tensors plus first
//! derivative tables, everything 0-based.
class relation_engine {
public:
  explicit relation_engine(const hydro_bracket& B)
      : B_(B), N_(B.components()), n_(B.dimension()), V_(B.vars()) {
    dg_.reserve(n_);
    db_.reserve(n_);
    for (int a = 0; a < n_; ++a) {
      const index_spec up{index_kind::coordinate, variance::upper, N_};
      const index_spec lo{index_kind::coordinate, variance::lower, N_};
      tensor_field dg(V_, {up, up, lo});
      for (int i = 0; i < N_; ++i)
        for (int j = 0; j < N_; ++j)
          for (int k = 0; k < N_; ++k) dg.at({i, j, k}) = B.g(a).at({i, j}).diff(k);
      dg_.push_back(std::move(dg));
      tensor_field db(V_, {up, up, lo, lo});
      for (int i = 0; i < N_; ++i)
        for (int j = 0; j < N_; ++j)
          for (int k = 0; k < N_; ++k)
            for (int q = 0; q < N_; ++q) db.at({i, j, k, q}) = B.b(a).at({i, j, k}).diff(q);
      db_.push_back(std::move(db));
    }
  }

  int N() const { return N_; }
  int n() const { return n_; }

  const expr& g(int a, int i, int j) const { return B_.g(a).at({i, j}); }
  const expr& b(int a, int i, int j, int k) const { return B_.b(a).at({i, j, k}); }
  const expr& dg(int a, int i, int j, int k) const { return dg_[a].at({i, j, k}); }
  //! d b^{ij,a}_k / du^q
  const expr& db(int a, int i, int j, int k, int q) const { return db_[a].at({i, j, k, q}); }

  expr a1(int i, int j, int a) const { return g(a, i, j) - g(a, j, i); }

  expr a2(int i, int j, int k, int a) const {
    return dg(a, i, j, k) - b(a, i, j, k) - b(a, j, i, k);
  }

  //! g^{si,a} b^{jr,b}_s - g^{sj,b} b^{ir,a}_s summed over s.
  expr pair_term(int i, int j, int r, int a, int be) const {
    expr acc = expr::zero(V_);
    for (int s = 0; s < N_; ++s)
      acc += g(a, s, i) * b(be, j, r, s) - g(be, s, j) * b(a, i, r, s);
    return acc;
  }

  expr a3(int i, int j, int r, int a, int be) const {
    return pair_term(i, j, r, a, be) + pair_term(i, j, r, be, a);
  }

  expr a4(int i, int j, int r, int a, int be) const {
    return pair_term(i, j, r, a, be) + pair_term(j, r, i, a, be) + pair_term(r, i, j, a, be);
  }

  //! g^{si,a}(d_q b^{jr,b}_s - d_s b^{jr,b}_q) + b^{ij,a}_s b^{sr,b}_q
  //! - b^{ir,a}_s b^{sj,b}_q summed over s.
  expr curvature_term(int i, int j, int r, int q, int a, int be) const {
    expr acc = expr::zero(V_);
    for (int s = 0; s < N_; ++s) {
      acc += g(a, s, i) * (db(be, j, r, s, q) - db(be, j, r, q, s));
      acc += b(a, i, j, s) * b(be, s, r, q) - b(a, i, r, s) * b(be, s, j, q);
    }
    return acc;
  }

  expr a5(int i, int j, int r, int q, int a, int be) const {
    return curvature_term(i, j, r, q, a, be) + curvature_term(i, j, r, q, be, a);
  }

  expr a6(int i, int j, int r, int q, int a, int be) const {
    expr lhs = expr::zero(V_), rhs = expr::zero(V_);
    for (int s = 0; s < N_; ++s) {
      lhs += g(be, s, i) * db(a, j, r, q, s) - b(be, i, j, s) * b(a, s, r, q) -
             b(be, i, r, s) * b(a, j, s, q);
      rhs += g(a, s, j) * db(be, i, r, q, s) - b(a, j, i, s) * b(be, s, r, q) -
             b(be, i, s, q) * b(a, j, r, s);
    }
    return lhs - rhs;
  }

  expr a7(int i, int j, int r, int k, int q, int a, int be) const {
    expr res = curvature_term(i, j, r, q, a, be).diff(k);
    res += curvature_term(i, j, r, k, be, a).diff(q);
    const int cyc[3][3] = {{i, j, r}, {j, r, i}, {r, i, j}};
    for (const auto& c : cyc) {
      for (int s = 0; s < N_; ++s) {
        res += b(be, s, c[0], q) * (db(a, c[1], c[2], k, s) - db(a, c[1], c[2], s, k));
        res += b(a, s, c[0], k) * (db(be, c[1], c[2], q, s) - db(be, c[1], c[2], s, q));
      }
    }
    return res;
  }

private:
  const hydro_bracket& B_;
  int N_, n_;
  varset V_;
  std::vector<tensor_field> dg_;
  std::vector<tensor_field> db_;
};

using index_names = std::vector<std::string>;

//! Scans all tuples in ascending lexicographic order; the first nonzero
//! residual becomes the witness.
template <class Residual>
relation_verdict scan(const std::string& name, const index_names& names,
                      const std::vector<int>& extents, Residual res) {
  relation_verdict v;
  v.relation = name;
  std::vector<int> idx(extents.size(), 0);
  for (;;) {
    expr r = res(idx);
    if (!r.is_zero()) {
      violation w;
      for (std::size_t s = 0; s < idx.size(); ++s) w.indices.emplace_back(names[s], idx[s] + 1);
      w.residual = std::move(r);
      v.pass = false;
      v.witness = std::move(w);
      return v;
    }
    std::size_t s = idx.size();
    while (s-- > 0) {
      if (++idx[s] < extents[s]) break;
      idx[s] = 0;
      if (s == 0) return v;
    }
    if (idx == std::vector<int>(extents.size(), 0)) return v;
  }
}

} // namespace

relation_report verify_poisson(const hydro_bracket& B) {
  relation_engine E(B);
  const int N = E.N(), n = E.n();
  relation_report rep;

  rep.verdicts.push_back(scan(
      "a1", {"i", "j", "alpha"}, {N, N, n},
      [&](const std::vector<int>& x) { return E.a1(x[0], x[1], x[2]); }));
  rep.verdicts.push_back(scan(
      "a2", {"i", "j", "k", "alpha"}, {N, N, N, n},
      [&](const std::vector<int>& x) { return E.a2(x[0], x[1], x[2], x[3]); }));
  rep.verdicts.push_back(scan(
      "a3", {"i", "j", "r", "alpha", "beta"}, {N, N, N, n, n},
      [&](const std::vector<int>& x) { return E.a3(x[0], x[1], x[2], x[3], x[4]); }));
  rep.verdicts.push_back(scan(
      "a4", {"i", "j", "r", "alpha", "beta"}, {N, N, N, n, n},
      [&](const std::vector<int>& x) { return E.a4(x[0], x[1], x[2], x[3], x[4]); }));
  rep.verdicts.push_back(scan(
      "a5", {"i", "j", "r", "q", "alpha", "beta"}, {N, N, N, N, n, n},
      [&](const std::vector<int>& x) { return E.a5(x[0], x[1], x[2], x[3], x[4], x[5]); }));
  rep.verdicts.push_back(scan(
      "a6", {"i", "j", "r", "q", "alpha", "beta"}, {N, N, N, N, n, n},
      [&](const std::vector<int>& x) { return E.a6(x[0], x[1], x[2], x[3], x[4], x[5]); }));
  rep.verdicts.push_back(scan(
      "a7", {"i", "j", "r", "k", "q", "alpha", "beta"}, {N, N, N, N, N, n, n},
      [&](const std::vector<int>& x) {
        return E.a7(x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
      }));

  for (const auto& v : rep.verdicts) rep.overall = rep.overall && v.pass;
  return rep;
}

bracket_geometry derive_geometry(const hydro_bracket& B) {
  bracket_geometry out;
  const int N = B.components(), n = B.dimension();
  const varset& V = B.vars();
  const index_spec up{index_kind::coordinate, variance::upper, N};
  const index_spec lo{index_kind::coordinate, variance::lower, N};

  for (int a = 0; a < n; ++a) {
    metric_data md = metric_data::from_contravariant(B.g(a), a + 1);
    tensor_field conn(V, {up, lo, lo});
    for (int k = 0; k < N; ++k)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          expr acc = expr::zero(V);
          for (int s = 0; s < N; ++s) acc += md.lower().at({i, s}) * B.b(a).at({s, k, j});
          conn.at({k, i, j}) = -acc;
        }
    out.levi_civita_consistent = out.levi_civita_consistent && conn == md.christoffel();
    out.metrics.push_back(std::move(md));
    out.connections.push_back(std::move(conn));
  }
  return out;
}

namespace {

obstruction_set obstructions_from(const std::vector<tensor_field>& g,
                                  const std::vector<tensor_field>& conn, const varset& V) {
  obstruction_set out;
  const int n = static_cast<int>(g.size());
  const int N = g[0].extent(0);
  const index_spec up{index_kind::coordinate, variance::upper, N};
  const index_spec lo{index_kind::coordinate, variance::lower, N};

  for (int a = 0; a < n; ++a)
    for (int be = 0; be < n; ++be) {
      if (a == be) continue;
      tensor_field mixed(V, {up, lo, lo});
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          for (int k = 0; k < N; ++k)
            mixed.at({i, j, k}) = conn[be].at({i, j, k}) - conn[a].at({i, j, k});
      tensor_field raised(V, {up, up, up});
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          for (int k = 0; k < N; ++k) {
            expr acc = expr::zero(V);
            for (int r = 0; r < N; ++r)
              for (int s = 0; s < N; ++s)
                acc += g[be].at({k, s}) * g[a].at({i, r}) * mixed.at({j, r, s});
            raised.at({i, j, k}) = acc;
          }
      out.mixed.emplace(std::make_pair(a + 1, be + 1), std::move(mixed));
      out.raised.emplace(std::make_pair(a + 1, be + 1), std::move(raised));
    }
  return out;
}

} // namespace

obstruction_set obstructions(const hydro_bracket& B) {
  bracket_geometry geo = derive_geometry(B);
  std::vector<tensor_field> g;
  for (int a = 0; a < B.dimension(); ++a) g.push_back(B.g(a));
  return obstructions_from(g, geo.connections, B.vars());
}

relation_report verify_flat_pencil_relations(const hydro_bracket& B) {
  const int N = B.components(), n = B.dimension();
  const varset& V = B.vars();

  std::vector<metric_data> mds;
  std::vector<tensor_field> g, conn;
  for (int a = 0; a < n; ++a) {
    mds.push_back(metric_data::from_contravariant(B.g(a), a + 1));
    if (!mds.back().is_flat())
      throw non_flat_metric("metric alpha=" + std::to_string(a + 1) + " is not flat", a + 1);
    g.push_back(B.g(a));
    conn.push_back(mds.back().christoffel());
  }
  obstruction_set obs = obstructions_from(g, conn, V);

  // Pair keys in ascending (alpha, beta) order drive the lexicographic scan.
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [key, t] : obs.raised) pairs.push_back(key);

  relation_report rep;
  auto scan_pairs = [&](const std::string& name, const index_names& names,
                        const std::vector<int>& extents, auto residual) {
    relation_verdict v;
    v.relation = name;
    for (const auto& key : pairs) {
      std::vector<int> idx(extents.size(), 0);
      bool more = !extents.empty();
      while (more) {
        expr r = residual(key, idx);
        if (!r.is_zero()) {
          violation w;
          w.indices.emplace_back("alpha", key.first);
          w.indices.emplace_back("beta", key.second);
          for (std::size_t s = 0; s < idx.size(); ++s)
            w.indices.emplace_back(names[s], idx[s] + 1);
          w.residual = std::move(r);
          v.pass = false;
          v.witness = std::move(w);
          return v;
        }
        std::size_t s = idx.size();
        more = false;
        while (s-- > 0) {
          if (++idx[s] < extents[s]) {
            more = true;
            break;
          }
          idx[s] = 0;
        }
      }
    }
    return v;
  };

  rep.verdicts.push_back(scan_pairs(
      "b1", {"i", "j", "k"}, {N, N, N}, [&](const std::pair<int, int>& key, const std::vector<int>& x) {
        const tensor_field& T = obs.raised.at(key);
        return T.at({x[0], x[1], x[2]}) - T.at({x[2], x[1], x[0]});
      }));
  rep.verdicts.push_back(scan_pairs(
      "b2", {"i", "j", "k"}, {N, N, N}, [&](const std::pair<int, int>& key, const std::vector<int>& x) {
        const tensor_field& T = obs.raised.at(key);
        return T.at({x[0], x[1], x[2]}) + T.at({x[1], x[2], x[0]}) + T.at({x[2], x[0], x[1]});
      }));
  rep.verdicts.push_back(scan_pairs(
      "b3", {"i", "j", "r", "t"}, {N, N, N, N},
      [&](const std::pair<int, int>& key, const std::vector<int>& x) {
        const tensor_field& T = obs.raised.at(key);
        const tensor_field& M = obs.mixed.at(key);
        expr acc = expr::zero(V);
        for (int s = 0; s < N; ++s)
          acc += T.at({x[0], x[1], s}) * M.at({x[2], s, x[3]}) -
                 T.at({x[0], x[2], s}) * M.at({x[1], s, x[3]});
        return acc;
      }));

  // b4 needs one covariant derivative per pair; cache them.
  std::map<std::pair<int, int>, tensor_field> nabla;
  for (const auto& key : pairs)
    nabla.emplace(key, covariant_derivative_3up(obs.raised.at(key), mds[key.first - 1]));
  rep.verdicts.push_back(scan_pairs(
      "b4", {"r", "i", "j", "k"}, {N, N, N, N},
      [&](const std::pair<int, int>& key, const std::vector<int>& x) {
        return nabla.at(key).at({x[0], x[1], x[2], x[3]});
      }));

  for (const auto& v : rep.verdicts) rep.overall = rep.overall && v.pass;
  return rep;
}

bool theorem2_crosscheck(const hydro_bracket& B) {
  bool lhs = verify_poisson(B).overall;

  bool flat_all = true, b_consistent = true;
  std::vector<metric_data> mds;
  for (int a = 0; a < B.dimension(); ++a) {
    mds.push_back(metric_data::from_contravariant(B.g(a), a + 1));
    flat_all = flat_all && mds.back().is_flat();
  }
  if (flat_all)
    for (int a = 0; a < B.dimension(); ++a)
      b_consistent = b_consistent && B.b(a) == b_from_metric(mds[a]);
  bool rhs = flat_all && b_consistent && verify_flat_pencil_relations(B).overall;
  return lhs == rhs;
}

} // namespace dnb
