#ifndef DNB_GEOMETRY_HPP
#define DNB_GEOMETRY_HPP

#include <dnb/tensor.hpp>

#include <memory>
#include <mutex>
#include <optional>

namespace dnb {

//! A nondegenerate contravariant metric with its derived objects. Immutable
//! after construction; curvature is computed lazily under std::call_once so
//! shared instances stay safe to read concurrently.
//!
//! Construction inverts the metric, builds the Levi-Civita connection and
//! verifies metric compatibility (covariant derivative of the metric is zero)
//! symbolically; a failed self-check is an engine_error.
class metric_data {
public:
  metric_data() = default;

  //! g_upper: rank-2 coordinate tensor, both slots upper, symmetric.
  //! alpha is an optional 1-based spatial label used in error messages.
  static metric_data from_contravariant(const tensor_field& g_upper, int alpha = -1);

  int dim() const { return s_->upper.extent(0); }
  int alpha() const { return s_->alpha; }
  const varset& vars() const { return s_->upper.vars(); }

  const tensor_field& upper() const { return s_->upper; }
  const tensor_field& lower() const { return s_->lower; }
  //! Christoffel symbols of the second kind; slots (k upper, i lower, j lower).
  const tensor_field& christoffel() const { return s_->christoffel; }
  //! Riemann tensor R^i_{jkl}; slots (i upper, j k l lower).
  const tensor_field& curvature() const;
  bool is_flat() const { return curvature().is_zero(); }

private:
  struct state {
    tensor_field upper, lower, christoffel;
    int alpha = -1;
    mutable std::once_flag curvature_once;
    mutable std::optional<tensor_field> curvature;
  };
  std::shared_ptr<const state> s_;
};

//! Christoffel symbols of the Levi-Civita connection of g_upper.
tensor_field levi_civita(const tensor_field& g_upper, int alpha = -1);

//! Linear-term coefficients b^{ij}_k = -g^{is} Gamma^j_{sk} of the
//! one-dimensional bracket generated by a flat metric; the defining relation
//! d g^{ij}/du^k = b^{ij}_k + b^{ji}_k is re-verified symbolically.
tensor_field b_from_metric(const metric_data& m);

//! Covariant derivative of a (3,0) coordinate tensor: slot 0 of the result is
//! the new lower derivative index r, followed by the original i, j, k.
tensor_field covariant_derivative_3up(const tensor_field& t, const metric_data& m);

} // namespace dnb

#endif
