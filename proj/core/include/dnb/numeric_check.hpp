#ifndef DNB_NUMERIC_CHECK_HPP
#define DNB_NUMERIC_CHECK_HPP

#include <dnb/bracket.hpp>
#include <dnb/compat.hpp>

#include <cstdint>

namespace dnb {

//! Largest relative deviation |symbolic - numeric| / max(1, |..|, |..|)
//! seen over the sampled points.
struct oracle_result {
  double max_rel_err = 0.0;
  int points = 0;
};

//! Re-derives Christoffel symbols from jets of the covariant metric and the
//! curvature from jets of the Christoffel symbols at seeded random rational
//! points, and compares against the symbolic tensors.
oracle_result metric_jet_crosscheck(const metric_data& md, int npoints,
                                    std::uint64_t seed);

//! Re-derives the bracket connections, then the mixed and raised
//! obstruction tensors, from plain numeric values (matrix inversion done in
//! floating point) and compares against the symbolic tensors.
oracle_result obstruction_jet_crosscheck(const hydro_bracket& B, int npoints,
                                         std::uint64_t seed);

//! Re-derives the Nijenhuis tensor from jets of the affinor and compares
//! against the symbolic tensor.
oracle_result nijenhuis_jet_crosscheck(const metric_pair& p, int npoints,
                                       std::uint64_t seed);

} // namespace dnb

#endif
