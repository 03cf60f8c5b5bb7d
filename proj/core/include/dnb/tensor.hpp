#ifndef DNB_TENSOR_HPP
#define DNB_TENSOR_HPP

#include <dnb/expr.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace dnb {

//! Index families: coordinate indices run over the N dependent variables,
//! spatial indices over the n independent directions. Tagging the family
//! makes illegal contractions a hard error even when N equals n.
enum class index_kind { coordinate, spatial };
enum class variance { upper, lower };

struct index_spec {
  index_kind kind;
  variance var;
  int extent;
  bool operator==(const index_spec&) const = default;
};

//! Dense tensor with expr entries and tagged index slots, row-major storage.
class tensor_field {
public:
  tensor_field() = default;
  //! Zero-filled tensor of the given shape.
  tensor_field(varset vars, std::vector<index_spec> shape);

  //! Kronecker delta with one upper and one lower slot of the given family.
  static tensor_field kronecker(const varset& vars, index_kind kind, int extent);

  const varset& vars() const { return vars_; }
  const std::vector<index_spec>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  int extent(std::size_t slot) const { return shape_[slot].extent; }
  std::size_t size() const { return entries_.size(); }

  const expr& at(const std::vector<int>& idx) const { return entries_[flat(idx)]; }
  expr& at(const std::vector<int>& idx) { return entries_[flat(idx)]; }
  const expr& at(std::initializer_list<int> idx) const {
    return at(std::vector<int>(idx));
  }
  expr& at(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }

  const std::vector<expr>& entries() const { return entries_; }
  std::vector<expr>& entries() { return entries_; }

  bool is_zero() const;

  tensor_field operator+(const tensor_field& o) const;
  tensor_field operator-(const tensor_field& o) const;
  tensor_field operator-() const;
  tensor_field scaled(const expr& c) const;

  //! Contraction of two slots; they must share the index family and extent
  //! and carry opposite variance.
  tensor_field contract(std::size_t a, std::size_t b) const;

  //! t + t with slots a, b exchanged (no 1/2 factor). Slots must match.
  tensor_field symmetrize_pair(std::size_t a, std::size_t b) const;
  //! t - t with slots a, b exchanged. Slots must match.
  tensor_field antisymmetrize_pair(std::size_t a, std::size_t b) const;

  //! Sum over cyclic rotations of the values carried by the listed slots,
  //! which must all share kind, variance and extent.
  tensor_field cyclic_sum(const std::vector<std::size_t>& slots) const;

  bool operator==(const tensor_field& o) const {
    return shape_ == o.shape_ && entries_ == o.entries_;
  }

private:
  std::size_t flat(const std::vector<int>& idx) const;

  varset vars_;
  std::vector<index_spec> shape_;
  std::vector<expr> entries_;
};

//! Advances a multi-index over the shape; returns false after the last one.
bool next_index(std::vector<int>& idx, const std::vector<index_spec>& shape);

//! Determinant of a square rank-2 tensor with equal-family slots. Cofactor
//! expansion up to 4x4, fraction-free elimination above.
expr det(const tensor_field& t);

//! Determinant of a plain square matrix of expressions over one varset.
expr det(const std::vector<std::vector<expr>>& m, const varset& vars);

//! Inverse via adjugate over determinant; the result flips both variances.
//! Throws degenerate_metric when the determinant vanishes identically.
tensor_field invert(const tensor_field& t, const std::string& label = "matrix", int alpha = -1);

} // namespace dnb

#endif
