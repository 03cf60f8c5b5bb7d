#include <dnb/compat.hpp>

#include <dnb/errors.hpp>

#include <mutex>
#include <optional>

namespace dnb {

struct metric_pair::state {
  tensor_field g1, g2;
  mutable std::once_flag md1_once, md2_once, affinor_once;
  mutable std::optional<metric_data> md1, md2;
  mutable std::optional<tensor_field> affinor;
};

namespace {

void check_metric_shape(const tensor_field& g, const char* label) {
  if (g.rank() != 2 || g.extent(0) != g.extent(1) ||
      g.shape()[0].kind != index_kind::coordinate ||
      g.shape()[0].var != variance::upper || g.shape()[1].var != variance::upper)
    throw error(std::string(label) + " must be a square contravariant rank-2 tensor");
  const int N = g.extent(0);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (!(g.at({i, j}) == g.at({j, i})))
        throw error(std::string(label) + " is not symmetric");
}

} // namespace

metric_pair::metric_pair(tensor_field g1, tensor_field g2) {
  check_metric_shape(g1, "first metric");
  check_metric_shape(g2, "second metric");
  if (!(g1.vars() == g2.vars()) || g1.extent(0) != g2.extent(0))
    throw error("metric pair needs two metrics on one variable set and size");
  auto s = std::make_shared<state>();
  s->g1 = std::move(g1);
  s->g2 = std::move(g2);
  s_ = std::move(s);
}

const varset& metric_pair::vars() const { return s_->g1.vars(); }
int metric_pair::dim() const { return s_->g1.extent(0); }
const tensor_field& metric_pair::g1() const { return s_->g1; }
const tensor_field& metric_pair::g2() const { return s_->g2; }

const metric_data& metric_pair::md1() const {
  std::call_once(s_->md1_once,
                 [&] { s_->md1 = metric_data::from_contravariant(s_->g1, 1); });
  return *s_->md1;
}

const metric_data& metric_pair::md2() const {
  std::call_once(s_->md2_once,
                 [&] { s_->md2 = metric_data::from_contravariant(s_->g2, 2); });
  return *s_->md2;
}

const tensor_field& metric_pair::affinor() const {
  std::call_once(s_->affinor_once, [&] {
    const int N = dim();
    const varset& V = vars();
    const tensor_field& lower2 = md2().lower();
    tensor_field v(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::lower, N}});
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        expr acc = expr::zero(V);
        for (int s = 0; s < N; ++s) acc = acc + s_->g1.at({i, s}) * lower2.at({s, j});
        v.at({i, j}) = acc;
      }
    s_->affinor = std::move(v);
  });
  return *s_->affinor;
}

pair_obstructions pair_obstruction_tensors(const metric_pair& p) {
  const int N = p.dim();
  const varset& V = p.vars();
  const tensor_field& c1 = p.md1().christoffel();
  const tensor_field& c2 = p.md2().christoffel();

  pair_obstructions out{
      tensor_field(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::lower, N},
                       {index_kind::coordinate, variance::lower, N}}),
      tensor_field(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::upper, N}})};
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        out.mixed.at({i, j, k}) = c2.at({i, j, k}) - c1.at({i, j, k});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        expr acc = expr::zero(V);
        for (int r = 0; r < N; ++r)
          for (int s = 0; s < N; ++s)
            acc = acc + p.g2().at({k, s}) * p.g1().at({i, r}) * out.mixed.at({j, r, s});
        out.raised.at({i, j, k}) = acc;
      }
  return out;
}

namespace {

template <class Residual>
relation_verdict scan_tuples(const std::string& name,
                             const std::vector<std::string>& names,
                             const std::vector<int>& extents, Residual res) {
  relation_verdict v;
  v.relation = name;
  std::vector<int> idx(extents.size(), 0);
  bool more = true;
  while (more) {
    expr r = res(idx);
    if (!r.is_zero()) {
      violation w;
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
  return v;
}

relation_verdict pair_b1(const pair_obstructions& obs, int N) {
  return scan_tuples("b1", {"i", "j", "k"}, {N, N, N},
                     [&](const std::vector<int>& x) {
                       return obs.raised.at({x[0], x[1], x[2]}) -
                              obs.raised.at({x[2], x[1], x[0]});
                     });
}

relation_verdict pair_b3(const pair_obstructions& obs, int N, const varset& V) {
  return scan_tuples("b3", {"i", "j", "r", "t"}, {N, N, N, N},
                     [&](const std::vector<int>& x) {
                       expr acc = expr::zero(V);
                       for (int s = 0; s < N; ++s)
                         acc = acc +
                               obs.raised.at({x[0], x[1], s}) * obs.mixed.at({x[2], s, x[3]}) -
                               obs.raised.at({x[0], x[2], s}) * obs.mixed.at({x[1], s, x[3]});
                       return acc;
                     });
}

} // namespace

relation_verdict almost_compatibility(const metric_pair& p) {
  return pair_b1(pair_obstruction_tensors(p), p.dim());
}

bool is_almost_compatible(const metric_pair& p) {
  return almost_compatibility(p).pass;
}

relation_report compatibility(const metric_pair& p) {
  pair_obstructions obs = pair_obstruction_tensors(p);
  relation_report rep;
  rep.verdicts.push_back(pair_b1(obs, p.dim()));
  rep.verdicts.push_back(pair_b3(obs, p.dim(), p.vars()));
  for (const auto& v : rep.verdicts) rep.overall = rep.overall && v.pass;
  return rep;
}

bool is_compatible(const metric_pair& p) { return compatibility(p).overall; }

namespace {

//! Embeds a base-varset tensor into the extended varset unchanged.
tensor_field embed(const tensor_field& t, const varset& target) {
  std::vector<int> map(t.vars().size());
  for (std::size_t v = 0; v < map.size(); ++v) map[v] = static_cast<int>(v);
  tensor_field out(target, t.shape());
  for (std::size_t e = 0; e < t.entries().size(); ++e)
    out.entries()[e] = t.entries()[e].remap(target, map);
  return out;
}

//! Raised Christoffel symbols Gamma^{ij}_k = g^{is} Gamma^j_{sk}.
tensor_field raise_christoffel(const tensor_field& upper, const tensor_field& christoffel) {
  const int N = upper.extent(0);
  const varset& V = upper.vars();
  tensor_field out(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::lower, N}});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        expr acc = expr::zero(V);
        for (int s = 0; s < N; ++s) acc = acc + upper.at({i, s}) * christoffel.at({j, s, k});
        out.at({i, j, k}) = acc;
      }
  return out;
}

//! Raised curvature R^{ij}_{kl} = g^{is} R^j_{skl}.
tensor_field raise_curvature(const tensor_field& upper, const tensor_field& curvature) {
  const int N = upper.extent(0);
  const varset& V = upper.vars();
  tensor_field out(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::lower, N},
                       {index_kind::coordinate, variance::lower, N}});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          expr acc = expr::zero(V);
          for (int s = 0; s < N; ++s)
            acc = acc + upper.at({i, s}) * curvature.at({j, s, k, l});
          out.at({i, j, k, l}) = acc;
        }
  return out;
}

} // namespace

bool pencil_direct_check(const metric_pair& p) {
  const int N = p.dim();
  const varset& base = p.vars();
  std::string l1 = "lam1", l2 = "lam2";
  while (base.index(l1) || base.index(l2)) {
    l1 += "_";
    l2 += "_";
  }
  varset V = base.extended({l1, l2});
  const expr lam1 = expr::variable(V, base.size());
  const expr lam2 = expr::variable(V, base.size() + 1);

  tensor_field e1 = embed(p.g1(), V), e2 = embed(p.g2(), V);
  tensor_field pencil = e1.scaled(lam1) + e2.scaled(lam2);
  if (det(pencil).is_zero())
    throw degenerate_pencil(
        "pencil determinant vanishes identically in the pencil parameters");

  metric_data md_pencil = metric_data::from_contravariant(pencil);

  // Raised objects of the individual metrics, computed in the base varset
  // and embedded afterwards.
  tensor_field gamma1 = embed(raise_christoffel(p.g1(), p.md1().christoffel()), V);
  tensor_field gamma2 = embed(raise_christoffel(p.g2(), p.md2().christoffel()), V);
  tensor_field gamma_pencil = raise_christoffel(pencil, md_pencil.christoffel());
  if (!(gamma_pencil == gamma1.scaled(lam1) + gamma2.scaled(lam2))) return false;

  tensor_field r1 = embed(raise_curvature(p.g1(), p.md1().curvature()), V);
  tensor_field r2 = embed(raise_curvature(p.g2(), p.md2().curvature()), V);
  tensor_field r_pencil = raise_curvature(pencil, md_pencil.curvature());
  return r_pencil == r1.scaled(lam1) + r2.scaled(lam2);
}

tensor_field nijenhuis(const metric_pair& p) {
  const int N = p.dim();
  const varset& V = p.vars();
  const tensor_field& v = p.affinor();

  tensor_field dv(V, {{index_kind::coordinate, variance::upper, N},
                      {index_kind::coordinate, variance::lower, N},
                      {index_kind::coordinate, variance::lower, N}});
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int q = 0; q < N; ++q) dv.at({i, j, q}) = v.at({i, j}).diff(q);

  tensor_field out(V, {{index_kind::coordinate, variance::upper, N},
                       {index_kind::coordinate, variance::lower, N},
                       {index_kind::coordinate, variance::lower, N}});
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        expr acc = expr::zero(V);
        for (int s = 0; s < N; ++s) {
          acc = acc + v.at({s, i}) * dv.at({k, j, s}) - v.at({s, j}) * dv.at({k, i, s});
          acc = acc + v.at({k, s}) * dv.at({s, i, j}) - v.at({k, s}) * dv.at({s, j, i});
        }
        out.at({k, i, j}) = acc;
      }
  return out;
}

// Renders an expression with positive terms ahead of negative ones so simple
// differences read naturally (u2 - u1 rather than -u1 + u2). Falls back to
// the canonical form when a denominator is present.
static std::string positive_first_text(const expr& e) {
  if (!e.den().is_one() || e.num().is_zero()) return e.to_string();
  std::vector<term> pos, neg;
  for (const term& t : e.num().terms()) (t.coeff < 0 ? neg : pos).push_back(t);
  if (pos.empty() || neg.empty()) return e.to_string();
  std::string out;
  for (const term& t : pos) {
    if (!out.empty()) out += " + ";
    out += poly::single(e.vars(), t.mono, t.coeff).to_string();
  }
  for (const term& t : neg)
    out += " - " + poly::single(e.vars(), t.mono, -t.coeff).to_string();
  return out;
}

pencil_analysis_result pencil_analysis(const metric_pair& p) {
  const int N = p.dim();
  const varset& base = p.vars();
  p.md2(); // enforce the nondegeneracy precondition on g2

  std::string lname = "lam";
  while (base.index(lname)) lname += "_";
  varset V = base.extended({lname});
  const expr lam = expr::variable(V, base.size());

  tensor_field m = embed(p.g1(), V) - embed(p.g2(), V).scaled(lam);
  expr chi = det(m);

  pencil_analysis_result out;
  out.char_poly_text = chi.to_string();

  // The denominator cannot involve lam: it divides a product of the
  // lam-free entry denominators.
  const std::size_t lidx = base.size();
  if (chi.den().degree_in(lidx) != 0)
    throw engine_error("pencil characteristic polynomial has a parameter-"
                       "dependent denominator. Internal cross-checks "
                       "disagreed. Always a bug in the engine, never user "
                       "error.");
  std::vector<int> back(V.size());
  for (std::size_t v = 0; v < base.size(); ++v) back[v] = static_cast<int>(v);
  back[lidx] = -1;
  std::vector<poly> cs = chi.num().coeffs_in(lidx);
  const poly den_base = chi.den().remap(base, back);
  for (const poly& c : cs)
    out.char_poly.push_back(expr::quotient(c.remap(base, back), den_base));
  const int d = static_cast<int>(out.char_poly.size()) - 1;
  if (d != N)
    throw engine_error("characteristic polynomial degree disagrees with the "
                       "matrix size. Internal cross-checks disagreed. Always "
                       "a bug in the engine, never user error.");

  if (d <= 1) {
    out.discriminant = expr::one(base);
  } else {
    // Sylvester resultant of chi and d chi / d lam, rows in descending
    // coefficient order.
    std::vector<expr> pc(out.char_poly.rbegin(), out.char_poly.rend());
    std::vector<expr> qc;
    for (int k = d; k >= 1; --k)
      qc.push_back(out.char_poly[static_cast<std::size_t>(k)].scaled(rational(k)));
    const int rows = 2 * d - 1;
    std::vector<std::vector<expr>> syl(
        static_cast<std::size_t>(rows),
        std::vector<expr>(static_cast<std::size_t>(rows), expr::zero(base)));
    for (int r = 0; r < d - 1; ++r)
      for (int c = 0; c <= d; ++c) syl[r][r + c] = pc[static_cast<std::size_t>(c)];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c <= d - 1; ++c)
        syl[d - 1 + r][r + c] = qc[static_cast<std::size_t>(c)];
    expr res = det(syl, base);
    expr disc = res / out.char_poly.back();
    if ((d * (d - 1) / 2) % 2 == 1) disc = -disc;
    out.discriminant = disc;
  }

  out.nonsingular = !out.discriminant.is_zero();
  if (out.nonsingular) {
    out.note = "eigenvalues distinct as functions";
  } else if (d == 2) {
    const expr root =
        -out.char_poly[1] / (out.char_poly[2] + out.char_poly[2]);
    out.note = "repeated eigenvalues; double root lam = " + positive_first_text(root);
  } else {
    out.note = "repeated eigenvalues (discriminant vanishes identically)";
  }
  return out;
}

bool verify_diagonal_form(const metric_pair& p, const coordinate_change& phi) {
  const int N = p.dim();
  tensor_field t1 = transform_metric(p.g1(), phi);
  tensor_field t2 = transform_metric(p.g2(), phi);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      if (!t1.at({i, j}).is_zero() || !t2.at({i, j}).is_zero()) return false;
    }
  for (int i = 0; i < N; ++i) {
    if (t2.at({i, i}).is_zero()) return false;
    const expr ratio = t1.at({i, i}) / t2.at({i, i});
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      if (phi.inverse()) {
        // Entries already live in the target coordinates.
        if (!ratio.diff(static_cast<std::size_t>(j)).is_zero()) return false;
      } else {
        // Pullback representation: d/dw^j = (J^{-1})^s_j d/du^s.
        expr dj = expr::zero(p.vars());
        for (int s = 0; s < N; ++s)
          dj = dj + phi.inverse_jacobian().at({s, j}) * ratio.diff(static_cast<std::size_t>(s));
        if (!dj.is_zero()) return false;
      }
    }
  }
  return true;
}

} // namespace dnb
