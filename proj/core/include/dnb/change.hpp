#ifndef DNB_CHANGE_HPP
#define DNB_CHANGE_HPP

#include <dnb/bracket.hpp>

#include <optional>
#include <vector>

namespace dnb {

//! Invertible coordinate change w = phi(u), given by the forward component
//! expressions in the source coordinates. Construction computes the Jacobian,
//! rejects identically singular maps, inverts the Jacobian exactly and
//! re-verifies J * J^{-1} = delta. An optional explicit inverse map (written
//! in the target coordinate names, which reuse the source varset) is verified
//! by composition before being accepted.
class coordinate_change {
public:
  coordinate_change(varset vars, std::vector<expr> forward,
                    std::optional<std::vector<expr>> inverse = std::nullopt);

  const varset& vars() const { return vars_; }
  int dim() const { return static_cast<int>(forward_.size()); }
  const std::vector<expr>& forward() const { return forward_; }
  const std::optional<std::vector<expr>>& inverse() const { return inverse_; }

  //! J^i_j = d w^i / d u^j, slots (i upper, j lower).
  const tensor_field& jacobian() const { return jac_; }
  const expr& jacobian_det() const { return det_; }
  //! (J^{-1})^i_j as functions of the source coordinates.
  const tensor_field& inverse_jacobian() const { return inv_jac_; }
  //! d^2 w^i / du^q du^s, slots (i upper, q lower, s lower).
  const tensor_field& hessian() const { return hess_; }

  //! Composition (outer after *this): u -> outer(phi(u)).
  coordinate_change then(const coordinate_change& outer) const;

private:
  varset vars_;
  std::vector<expr> forward_;
  std::optional<std::vector<expr>> inverse_;
  tensor_field jac_, inv_jac_, hess_;
  expr det_;
};

//! Transformed bracket coefficients under w = phi(u):
//!   g'^{ij,a} = J^i_p J^j_q g^{pq,a}
//!   b'^{ij,a}_k = (J^i_p J^j_q b^{pq,a}_s + J^i_p g^{pq,a} H^j_{qs}) (J^{-1})^s_k
//! Without an inverse map the result is the pullback representation (entries
//! are functions of the source coordinates); with one, entries are
//! re-expressed in the target coordinates.
hydro_bracket transform(const hydro_bracket& B, const coordinate_change& phi);

//! Same transform law applied to one contravariant rank-2 tensor.
tensor_field transform_metric(const tensor_field& g, const coordinate_change& phi);

} // namespace dnb

#endif
