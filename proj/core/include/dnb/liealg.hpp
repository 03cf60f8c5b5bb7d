#ifndef DNB_LIEALG_HPP
#define DNB_LIEALG_HPP

#include <dnb/bracket.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace dnb {

//! Field-linear bracket data: constant b^{ij,a}_k and constant g0^{ij,a}
//! with metrics g^{ij,a}(u) = (b^{ij,a}_k + b^{ji,a}_k) u^k + g0^{ij,a}.
struct linear_bracket_data {
  int N = 0;
  int n = 0;
  //! b0[a][i][j][k], shape n x N x N x N.
  std::vector<std::vector<std::vector<std::vector<rational>>>> b0;
  //! g0[a][i][j], shape n x N x N.
  std::vector<std::vector<std::vector<rational>>> g0;

  static linear_bracket_data zeros(int N, int n);
  const rational& b(int a, int i, int j, int k) const {
    return b0[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }
  rational& b(int a, int i, int j, int k) {
    return b0[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  }
};

//! Builds the bracket with linear metrics and constant coefficients.
hydro_bracket to_bracket(const linear_bracket_data& L);

//! Extracts the constants when every b entry is constant and every metric
//! is the matching linear function of u; nullopt otherwise.
std::optional<linear_bracket_data> check_linear_form(const hydro_bracket& B);

//! Closedness of the homogeneous part (g0 dropped): equivalently, the
//! constants b0 define a Lie algebra structure on covector fields via
//! [x, y]_k = b^{ij,a}_k ((y_i)_a x_j - y_j (x_i)_a).
relation_report jacobi_check(const linear_bracket_data& L);

//! Bilinear-form layer on top of a Jacobi-passing b0: skewness and
//! closedness of the constant form g0 as read off the full bracket's
//! relation report, plus an exact rational solve for a constant shift c
//! with (b^{ij,a}_k + b^{ji,a}_k) c^k = g0^{ij,a}.
struct cocycle_report {
  bool skew = false;
  bool closed = false;
  std::optional<std::vector<rational>> coboundary_shift;
  relation_report full;
};
cocycle_report cocycle_check(const linear_bracket_data& L);

//! (x o_a y)_k = x_i y_j b^{ij,a}_k; a is 1-based.
std::vector<rational> multiply(const linear_bracket_data& L, int a,
                               const std::vector<rational>& x,
                               const std::vector<rational>& y);

//! Numeric cross-check of jacobi_check: random trigonometric covector
//! fields of harmonic degree <= 2 on the n-torus, Jacobi residual of the
//! bracket evaluated pointwise on a 16^n grid; returns the maximum
//! absolute residual over the trials.
double functional_oracle(const linear_bracket_data& L, int trials,
                         std::uint64_t seed);

} // namespace dnb

#endif
