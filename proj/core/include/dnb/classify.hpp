#ifndef DNB_CLASSIFY_HPP
#define DNB_CLASSIFY_HPP

#include <dnb/bracket.hpp>
#include <dnb/compat.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dnb {

enum class reducibility_kind { constant_reducible, obstructed, undecided };

struct classification_verdict {
  reducibility_kind kind = reducibility_kind::undecided;
  //! For obstructed verdicts: 1-based indices (i, j, k, alpha, beta) of a
  //! nonzero raised obstruction entry, with its value as the residual.
  std::optional<violation> witness;
  std::string note;
};

//! Constant-form reducibility by the obstruction criterion: reducible
//! exactly when every mixed obstruction tensor vanishes identically.
//! Throws not_a_poisson_bracket when the closedness relations fail and
//! degenerate_metric when a metric cannot be inverted.
classification_verdict is_constant_reducible(const hydro_bracket& B);

//! One-component case (N = 1): always reducible to constant form; the
//! metrics are proportional with constant ratios g^alpha = c^alpha g^{a0}.
struct one_component_result {
  classification_verdict verdict;
  //! 1-based reference direction with g^{a0} not identically zero; 0 when
  //! the whole bracket vanishes.
  int base_alpha = 0;
  std::vector<rational> constants;
  //! The normalizing coordinate is a quadrature, generally outside the
  //! rational engine; described as text.
  std::string quadrature_note;
};
one_component_result classify_one_component(const hydro_bracket& B);

//! Nonsingularity criterion: if some metric forms a nonsingular pair with
//! every other metric, the bracket reduces to constant form. The positive
//! verdict is cross-checked against the obstruction criterion; returns
//! undecided when no such metric exists.
classification_verdict reducibility_by_nonsingularity(const hydro_bracket& B);

//! Two-component, two-dimensional verdict: constant class when every
//! obstruction vanishes, otherwise the bracket of the Lie algebra of vector
//! fields on the 2-torus. Definiteness of a metric at a sample point is
//! reported as an informational consistency note, never used as a verdict
//! source.
struct two_component_result {
  bool constant_class = false;
  std::string verdict;
  std::string definiteness_note;
};
two_component_result two_component_verdict(const hydro_bracket& B);

} // namespace dnb

#endif
