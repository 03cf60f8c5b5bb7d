#include <dnb/classify.hpp>

#include <dnb/errors.hpp>

namespace dnb {

namespace {

void require_poisson(const hydro_bracket& B) {
  relation_report rep = verify_poisson(B);
  if (rep.overall) return;
  for (const auto& v : rep.verdicts)
    if (!v.pass)
      throw not_a_poisson_bracket("closedness relation " + v.relation +
                                  " fails; run verify for the witness");
}

} // namespace

classification_verdict is_constant_reducible(const hydro_bracket& B) {
  require_poisson(B);
  obstruction_set obs = obstructions(B);

  classification_verdict out;
  bool all_zero = true;
  for (const auto& [key, t] : obs.mixed) all_zero = all_zero && t.is_zero();
  if (all_zero) {
    out.kind = reducibility_kind::constant_reducible;
    out.note = "every obstruction tensor vanishes identically; a local "
               "change of coordinates brings all coefficients to constants";
    return out;
  }

  out.kind = reducibility_kind::obstructed;
  // The raised tensor of a pair vanishes exactly when the mixed one does,
  // so the first nonzero raised entry in (alpha, beta, i, j, k) order is a
  // valid witness.
  for (const auto& [key, t] : obs.raised) {
    const int N = t.extent(0);
    for (int i = 0; i < N && !out.witness; ++i)
      for (int j = 0; j < N && !out.witness; ++j)
        for (int k = 0; k < N && !out.witness; ++k) {
          const expr& e = t.at({i, j, k});
          if (e.is_zero()) continue;
          violation w;
          w.indices.emplace_back("i", i + 1);
          w.indices.emplace_back("j", j + 1);
          w.indices.emplace_back("k", k + 1);
          w.indices.emplace_back("alpha", key.first);
          w.indices.emplace_back("beta", key.second);
          w.residual = e;
          out.witness = std::move(w);
        }
    if (out.witness) break;
  }
  if (!out.witness)
    throw engine_error("mixed obstruction nonzero but raised obstruction "
                       "vanishes. Internal cross-checks disagreed. Always a "
                       "bug in the engine, never user error.");
  out.note = "nonzero obstruction entry found; no local change of "
             "coordinates makes all coefficients constant";
  return out;
}

one_component_result classify_one_component(const hydro_bracket& B) {
  if (B.components() != 1)
    throw error("one-component classification needs N = 1");
  require_poisson(B);

  const int n = B.dimension();
  one_component_result out;
  out.verdict.kind = reducibility_kind::constant_reducible;

  for (int a = 0; a < n; ++a)
    if (!B.g(a).at({0, 0}).is_zero()) {
      out.base_alpha = a + 1;
      break;
    }
  if (out.base_alpha == 0) {
    out.constants.assign(static_cast<std::size_t>(n), rational(0));
    out.verdict.note = "every metric vanishes identically; the bracket is zero";
    out.quadrature_note = "no normalizing change needed";
    return out;
  }

  const expr& base = B.g(out.base_alpha - 1).at({0, 0});
  for (int a = 0; a < n; ++a) {
    const expr& ga = B.g(a).at({0, 0});
    if (ga.is_zero()) {
      out.constants.emplace_back(0);
      continue;
    }
    const expr ratio = ga / base;
    if (!ratio.is_constant())
      throw engine_error("one-component metrics of a verified bracket are "
                         "not proportional. Internal cross-checks disagreed. "
                         "Always a bug in the engine, never user error.");
    out.constants.push_back(ratio.constant_value());
  }

  out.verdict.note = "one-component brackets always reduce to constant form; "
                     "metrics proportional with constant ratios";
  out.quadrature_note =
      "normalizing coordinate: integral of du / |g(u)|^(1/2) along u, with "
      "g = " + base.to_string() +
      "; the change is a quadrature, not a rational expression";
  return out;
}

classification_verdict reducibility_by_nonsingularity(const hydro_bracket& B) {
  require_poisson(B);
  const int n = B.dimension();
  for (int a = 0; a < n; ++a)
    if (det(B.g(a)).is_zero())
      throw degenerate_metric("metric alpha=" + std::to_string(a + 1) +
                                  " has identically vanishing determinant",
                              a + 1);

  classification_verdict out;
  for (int a0 = 0; a0 < n; ++a0) {
    bool all_nonsingular = true;
    for (int be = 0; be < n && all_nonsingular; ++be) {
      if (be == a0) continue;
      metric_pair p(B.g(be), B.g(a0));
      all_nonsingular = pencil_analysis(p).nonsingular;
    }
    if (!all_nonsingular) continue;

    obstruction_set obs = obstructions(B);
    for (const auto& [key, t] : obs.mixed)
      if (!t.is_zero())
        throw engine_error("nonsingularity criterion and obstruction "
                           "criterion disagree. Internal cross-checks "
                           "disagreed. Always a bug in the engine, never "
                           "user error.");
    out.kind = reducibility_kind::constant_reducible;
    out.note = "metric alpha=" + std::to_string(a0 + 1) +
               " forms nonsingular pairs with every other metric, so the "
               "bracket reduces to constant form; obstruction tensors "
               "confirmed zero";
    return out;
  }
  out.kind = reducibility_kind::undecided;
  out.note = "no metric forms nonsingular pairs with all the others; the "
             "nonsingularity criterion gives no verdict";
  return out;
}

two_component_result two_component_verdict(const hydro_bracket& B) {
  if (B.components() != 2 || B.dimension() != 2)
    throw error("two-component verdict needs N = 2 and n = 2");
  require_poisson(B);

  two_component_result out;
  obstruction_set obs = obstructions(B);
  bool all_zero = true;
  for (const auto& [key, t] : obs.mixed) all_zero = all_zero && t.is_zero();
  out.constant_class = all_zero;
  out.verdict = all_zero
                    ? "constant class: reducible to a bracket with constant "
                      "coefficients"
                    : "canonical class: generated by the Lie algebra of "
                      "vector fields on the two-dimensional torus";

  // Informational definiteness probe via leading principal minors at
  // deterministic rational sample points.
  static const std::vector<std::vector<rational>> samples = {
      {rational(1, 2), rational(1, 3)}, {rational(2), rational(3)},
      {rational(-1), rational(2)},      {rational(5, 7), rational(-3, 2)},
      {rational(1), rational(1)},       {rational(3), rational(-2)},
      {rational(-4), rational(-5)}};
  for (int a = 0; a < B.dimension(); ++a) {
    const expr m1 = B.g(a).at({0, 0});
    const expr m2 = det(B.g(a));
    if (m1.is_zero() || m2.is_zero()) continue;
    for (const auto& pt : samples) {
      auto v1 = m1.eval_rational(pt);
      auto v2 = m2.eval_rational(pt);
      if (!v1 || !v2 || *v1 == 0 || *v2 == 0) continue;
      const bool pos = *v1 > 0 && *v2 > 0;
      const bool neg = *v1 < 0 && *v2 > 0;
      if (pos || neg) {
        out.definiteness_note =
            "metric alpha=" + std::to_string(a + 1) + " is " +
            (pos ? "positive" : "negative") + " definite at u = (" +
            to_string(pt[0]) + ", " + to_string(pt[1]) +
            "); definite metrics force the constant class";
        break;
      }
    }
    if (!out.definiteness_note.empty()) break;
  }
  return out;
}

} // namespace dnb
