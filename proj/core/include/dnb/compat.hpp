#ifndef DNB_COMPAT_HPP
#define DNB_COMPAT_HPP

#include <dnb/bracket.hpp>
#include <dnb/change.hpp>

#include <memory>
#include <string>
#include <vector>

namespace dnb {

//! Ordered pair of contravariant metrics on one variable set. The pair's
//! affinor, Levi-Civita data and obstruction tensors are memoized behind
//! once-only initialization, so copies stay cheap.
class metric_pair {
public:
  metric_pair(tensor_field g1, tensor_field g2);

  const varset& vars() const;
  int dim() const;
  const tensor_field& g1() const;
  const tensor_field& g2() const;

  //! Levi-Civita data of each metric; throws degenerate_metric (alpha 1 or
  //! 2 names the offender) on first use when a metric cannot be inverted.
  const metric_data& md1() const;
  const metric_data& md2() const;

  //! v^i_j = g1^{is} g2_{sj}, slots (i upper, j lower). Needs g2 invertible.
  const tensor_field& affinor() const;

private:
  struct state;
  std::shared_ptr<const state> s_;
};

//! Oriented obstruction tensors of the pair, from the two Levi-Civita
//! connections: mixed^i_{jk} = Gamma2^i_{jk} - Gamma1^i_{jk} and
//! raised^{ijk} = g2^{ks} g1^{ir} mixed^j_{rs}.
struct pair_obstructions {
  tensor_field mixed;
  tensor_field raised;
};
pair_obstructions pair_obstruction_tensors(const metric_pair& p);

//! Relation b1 (raised^{ijk} = raised^{kji}) on the pair's obstruction
//! tensor. Flatness of the metrics is not required.
relation_verdict almost_compatibility(const metric_pair& p);
bool is_almost_compatible(const metric_pair& p);

//! Relations b1 and b3; the pair is compatible precisely when both hold.
relation_report compatibility(const metric_pair& p);
bool is_compatible(const metric_pair& p);

//! Direct definition: adjoin two formal pencil parameters to the varset,
//! form the pencil metric l1*g1 + l2*g2, and test that its raised
//! Christoffel symbols Gamma^{ij}_k = g^{is} Gamma^j_{sk} and raised
//! curvature R^{ij}_{kl} = g^{is} R^j_{skl} are the matching linear
//! combinations of the two metrics' own raised objects, identically in
//! (l1, l2, u). Throws degenerate_pencil when det of the pencil vanishes
//! identically.
bool pencil_direct_check(const metric_pair& p);

//! Nijenhuis tensor of the pair's affinor, slots (k upper, i lower,
//! j lower):
//!   N^k_{ij} = v^s_i d_s v^k_j - v^s_j d_s v^k_i
//!            + v^k_s d_j v^s_i - v^k_s d_i v^s_j.
tensor_field nijenhuis(const metric_pair& p);

//! Eigenvalue analysis of det(g1 - lam*g2) = 0.
struct pencil_analysis_result {
  //! Coefficients of det(g1 - lam*g2) by ascending power of lam, in the
  //! pair's variable set; degree equals the matrix size.
  std::vector<expr> char_poly;
  //! The same polynomial printed with the formal variable "lam".
  std::string char_poly_text;
  //! Resultant of the polynomial and its lam-derivative, divided by the
  //! leading coefficient and signed by (-1)^{d(d-1)/2}; identically zero
  //! exactly when the eigenvalues fail to be distinct as functions.
  expr discriminant;
  bool nonsingular = false;
  std::string note;
};
pencil_analysis_result pencil_analysis(const metric_pair& p);

//! Transforms both metrics by the change and tests the diagonal normal
//! form: both results diagonal and every ratio g1^{ii}/g2^{ii} annihilated
//! by the target-coordinate derivatives d/dw^j for j != i (computed through
//! the inverse Jacobian when the change carries no explicit inverse map).
bool verify_diagonal_form(const metric_pair& p, const coordinate_change& phi);

} // namespace dnb

#endif
