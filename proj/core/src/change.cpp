#include <dnb/change.hpp>

#include <dnb/errors.hpp>

namespace dnb {

coordinate_change::coordinate_change(varset vars, std::vector<expr> forward,
                                     std::optional<std::vector<expr>> inverse)
    : vars_(std::move(vars)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      jac_(vars_, {{index_kind::coordinate, variance::upper, (int)vars_.size()},
                   {index_kind::coordinate, variance::lower, (int)vars_.size()}}),
      inv_jac_(jac_),
      hess_(vars_, {{index_kind::coordinate, variance::upper, (int)vars_.size()},
                    {index_kind::coordinate, variance::lower, (int)vars_.size()},
                    {index_kind::coordinate, variance::lower, (int)vars_.size()}}),
      det_(expr::zero(vars_)) {
  const int N = static_cast<int>(vars_.size());
  if (static_cast<int>(forward_.size()) != N)
    throw error("coordinate change needs one forward expression per coordinate");
  for (const expr& f : forward_)
    if (!(f.vars() == vars_))
      throw error("coordinate change expressions use a different variable set");
  if (inverse_ && static_cast<int>(inverse_->size()) != N)
    throw error("inverse map needs one expression per coordinate");

  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) jac_.at({i, j}) = forward_[i].diff(j);
  det_ = det(jac_);
  if (det_.is_zero())
    throw non_invertible_change(
        "coordinate change has identically singular Jacobian");
  inv_jac_ = invert(jac_, "Jacobian");
  // Paranoia: adjugate-based inversion must reproduce the identity.
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      expr s = expr::zero(vars_);
      for (int k = 0; k < N; ++k) s = s + jac_.at({i, k}) * inv_jac_.at({k, j});
      const expr want = i == j ? expr::one(vars_) : expr::zero(vars_);
      if (!(s == want))
        throw engine_error("Jacobian inverse self-check failed. Internal "
                           "cross-checks disagreed. Always a bug in the "
                           "engine, never user error.");
    }

  for (int i = 0; i < N; ++i)
    for (int q = 0; q < N; ++q) {
      const expr dq = forward_[i].diff(q);
      for (int s = q; s < N; ++s) {
        expr h = dq.diff(s);
        hess_.at({i, q, s}) = h;
        hess_.at({i, s, q}) = h;
      }
    }

  if (inverse_) {
    // phi(psi(w)) must return each coordinate.
    for (int i = 0; i < N; ++i) {
      if (!(forward_[i].substitute(*inverse_) == expr::variable(vars_, i)))
        throw non_invertible_change(
            "supplied inverse map does not invert the forward map");
    }
  }
}

coordinate_change coordinate_change::then(const coordinate_change& outer) const {
  if (!(outer.vars_ == vars_))
    throw error("composed changes must share one variable set");
  std::vector<expr> fwd;
  fwd.reserve(forward_.size());
  for (const expr& f : outer.forward_) fwd.push_back(f.substitute(forward_));
  std::optional<std::vector<expr>> inv;
  if (inverse_ && outer.inverse_) {
    std::vector<expr> v;
    v.reserve(inverse_->size());
    for (const expr& g : *inverse_) v.push_back(g.substitute(*outer.inverse_));
    inv = std::move(v);
  }
  return coordinate_change(vars_, std::move(fwd), std::move(inv));
}

hydro_bracket transform(const hydro_bracket& B, const coordinate_change& phi) {
  if (!(B.vars() == phi.vars()))
    throw error("bracket and coordinate change use different variable sets");
  const int N = B.components();
  const int n = B.dimension();
  const varset& V = B.vars();
  const tensor_field& J = phi.jacobian();
  const tensor_field& Jinv = phi.inverse_jacobian();
  const tensor_field& H = phi.hessian();

  std::vector<tensor_field> gs, bs;
  gs.reserve(n);
  bs.reserve(n);
  for (int a = 0; a < n; ++a) {
    const tensor_field& g = B.g(a);
    const tensor_field& b = B.b(a);
    tensor_field gt(V, {{index_kind::coordinate, variance::upper, N},
                        {index_kind::coordinate, variance::upper, N}});
    tensor_field bt(V, {{index_kind::coordinate, variance::upper, N},
                        {index_kind::coordinate, variance::upper, N},
                        {index_kind::coordinate, variance::lower, N}});
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) {
        expr s = expr::zero(V);
        for (int p = 0; p < N; ++p) {
          if (J.at({i, p}).is_zero()) continue;
          for (int q = 0; q < N; ++q)
            s = s + J.at({i, p}) * J.at({j, q}) * g.at({p, q});
        }
        gt.at({i, j}) = s;
        gt.at({j, i}) = s;
      }
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int s = 0; s < N; ++s) {
          expr acc = expr::zero(V);
          for (int p = 0; p < N; ++p) {
            const expr& Jip = J.at({i, p});
            if (Jip.is_zero()) continue;
            for (int q = 0; q < N; ++q) {
              acc = acc + Jip * J.at({j, q}) * b.at({p, q, s});
              acc = acc + Jip * g.at({p, q}) * H.at({j, q, s});
            }
          }
          for (int k = 0; k < N; ++k) {
            if (Jinv.at({s, k}).is_zero()) continue;
            bt.at({i, j, k}) = bt.at({i, j, k}) + acc * Jinv.at({s, k});
          }
        }
    if (phi.inverse()) {
      const std::vector<expr>& psi = *phi.inverse();
      for (expr& e : gt.entries()) e = e.substitute(psi);
      for (expr& e : bt.entries()) e = e.substitute(psi);
    }
    gs.push_back(std::move(gt));
    bs.push_back(std::move(bt));
  }
  return hydro_bracket(V, std::move(gs), std::move(bs));
}

tensor_field transform_metric(const tensor_field& g, const coordinate_change& phi) {
  if (!(g.vars() == phi.vars()))
    throw error("metric and coordinate change use different variable sets");
  const int N = g.extent(0);
  const varset& V = g.vars();
  const tensor_field& J = phi.jacobian();
  tensor_field gt(V, {{index_kind::coordinate, variance::upper, N},
                      {index_kind::coordinate, variance::upper, N}});
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      expr s = expr::zero(V);
      for (int p = 0; p < N; ++p) {
        if (J.at({i, p}).is_zero()) continue;
        for (int q = 0; q < N; ++q) s = s + J.at({i, p}) * J.at({j, q}) * g.at({p, q});
      }
      gt.at({i, j}) = s;
      gt.at({j, i}) = s;
    }
  if (phi.inverse())
    for (expr& e : gt.entries()) e = e.substitute(*phi.inverse());
  return gt;
}

} // namespace dnb
