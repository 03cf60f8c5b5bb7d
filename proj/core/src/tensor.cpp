#include <dnb/tensor.hpp>

namespace dnb {

tensor_field::tensor_field(varset vars, std::vector<index_spec> shape)
    : vars_(std::move(vars)), shape_(std::move(shape)) {
  std::size_t n = 1;
  for (const index_spec& s : shape_) n *= static_cast<std::size_t>(s.extent);
  entries_.assign(n, expr::zero(vars_));
}

tensor_field tensor_field::kronecker(const varset& vars, index_kind kind, int extent) {
  tensor_field t(vars, {{kind, variance::upper, extent}, {kind, variance::lower, extent}});
  for (int i = 0; i < extent; ++i) t.at({i, i}) = expr::one(vars);
  return t;
}

std::size_t tensor_field::flat(const std::vector<int>& idx) const {
  std::size_t p = 0;
  for (std::size_t s = 0; s < shape_.size(); ++s)
    p = p * static_cast<std::size_t>(shape_[s].extent) + static_cast<std::size_t>(idx[s]);
  return p;
}

bool tensor_field::is_zero() const {
  for (const expr& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

tensor_field tensor_field::operator+(const tensor_field& o) const {
  if (shape_ != o.shape_) throw engine_error("tensor addition with mismatched shapes");
  tensor_field r = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
  return r;
}

tensor_field tensor_field::operator-(const tensor_field& o) const { return *this + (-o); }

tensor_field tensor_field::operator-() const {
  tensor_field r = *this;
  for (expr& e : r.entries_) e = -e;
  return r;
}

tensor_field tensor_field::scaled(const expr& c) const {
  tensor_field r = *this;
  for (expr& e : r.entries_) e *= c;
  return r;
}

bool next_index(std::vector<int>& idx, const std::vector<index_spec>& shape) {
  for (std::size_t s = idx.size(); s-- > 0;) {
    if (++idx[s] < shape[s].extent) return true;
    idx[s] = 0;
  }
  return false;
}

tensor_field tensor_field::contract(std::size_t a, std::size_t b) const {
  if (a == b || a >= rank() || b >= rank())
    throw engine_error("contract: bad slot selection");
  const index_spec& sa = shape_[a];
  const index_spec& sb = shape_[b];
  if (sa.kind != sb.kind || sa.extent != sb.extent || sa.var == sb.var)
    throw engine_error("contract: slots must share family and extent with opposite variance");

  std::vector<index_spec> out_shape;
  for (std::size_t s = 0; s < rank(); ++s)
    if (s != a && s != b) out_shape.push_back(shape_[s]);
  tensor_field out(vars_, out_shape);

  std::vector<int> oidx(out_shape.size(), 0);
  std::vector<int> idx(rank(), 0);
  do {
    expr sum = expr::zero(vars_);
    for (int k = 0; k < sa.extent; ++k) {
      std::size_t o = 0;
      for (std::size_t s = 0; s < rank(); ++s) {
        if (s == a || s == b)
          idx[s] = k;
        else
          idx[s] = oidx[o++];
      }
      sum += at(idx);
    }
    out.at(oidx) = sum;
  } while (next_index(oidx, out_shape));
  return out;
}

tensor_field tensor_field::symmetrize_pair(std::size_t a, std::size_t b) const {
  if (shape_[a] != shape_[b]) throw engine_error("symmetrize_pair: slot mismatch");
  tensor_field out(vars_, shape_);
  std::vector<int> idx(rank(), 0), jdx;
  do {
    jdx = idx;
    std::swap(jdx[a], jdx[b]);
    out.at(idx) = at(idx) + at(jdx);
  } while (next_index(idx, shape_));
  return out;
}

tensor_field tensor_field::antisymmetrize_pair(std::size_t a, std::size_t b) const {
  if (shape_[a] != shape_[b]) throw engine_error("antisymmetrize_pair: slot mismatch");
  tensor_field out(vars_, shape_);
  std::vector<int> idx(rank(), 0), jdx;
  do {
    jdx = idx;
    std::swap(jdx[a], jdx[b]);
    out.at(idx) = at(idx) - at(jdx);
  } while (next_index(idx, shape_));
  return out;
}

tensor_field tensor_field::cyclic_sum(const std::vector<std::size_t>& slots) const {
  for (std::size_t s : slots)
    if (shape_[s] != shape_[slots[0]]) throw engine_error("cyclic_sum: slot mismatch");
  tensor_field out(vars_, shape_);
  std::vector<int> idx(rank(), 0), jdx;
  do {
    expr sum = expr::zero(vars_);
    for (std::size_t r = 0; r < slots.size(); ++r) {
      jdx = idx;
      for (std::size_t k = 0; k < slots.size(); ++k)
        jdx[slots[k]] = idx[slots[(k + r) % slots.size()]];
      sum += at(jdx);
    }
    out.at(idx) = sum;
  } while (next_index(idx, shape_));
  return out;
}

namespace {

expr det_cofactor(const std::vector<std::vector<expr>>& m, const varset& vars) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  expr acc = expr::zero(vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<expr>> minor(n - 1, std::vector<expr>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    expr term = m[0][j] * det_cofactor(minor, vars);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Fraction-free Gaussian elimination with row pivoting.
expr det_bareiss(std::vector<std::vector<expr>> m, const varset& vars) {
  std::size_t n = m.size();
  expr prev = expr::one(vars);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return expr::zero(vars);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  expr d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

std::vector<std::vector<expr>> as_matrix(const tensor_field& t) {
  if (t.rank() != 2 || t.extent(0) != t.extent(1) || t.shape()[0].kind != t.shape()[1].kind)
    throw engine_error("determinant/inverse requires a square rank-2 tensor of one family");
  std::size_t n = static_cast<std::size_t>(t.extent(0));
  std::vector<std::vector<expr>> m(n, std::vector<expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i][j] = t.at({static_cast<int>(i), static_cast<int>(j)});
  return m;
}

} // namespace

expr det(const tensor_field& t) {
  auto m = as_matrix(t);
  return m.size() <= 4 ? det_cofactor(m, t.vars()) : det_bareiss(std::move(m), t.vars());
}

expr det(const std::vector<std::vector<expr>>& m, const varset& vars) {
  if (m.empty()) return expr::one(vars);
  for (const auto& row : m)
    if (row.size() != m.size()) throw engine_error("det: matrix is not square");
  return m.size() <= 4 ? det_cofactor(m, vars) : det_bareiss(m, vars);
}

tensor_field invert(const tensor_field& t, const std::string& label, int alpha) {
  auto m = as_matrix(t);
  std::size_t n = m.size();
  expr d = det(t);
  if (d.is_zero())
    throw degenerate_metric(label + " has identically vanishing determinant", alpha);

  auto flip = [](variance v) {
    return v == variance::upper ? variance::lower : variance::upper;
  };
  std::vector<index_spec> shape = t.shape();
  shape[0].var = flip(shape[0].var);
  shape[1].var = flip(shape[1].var);
  tensor_field out(t.vars(), shape);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (n == 1) {
        out.at({0, 0}) = expr::one(t.vars()) / d;
        continue;
      }
      // Cofactor of (j, i) over det.
      std::vector<std::vector<expr>> minor(n - 1, std::vector<expr>(n - 1));
      std::size_t rr = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == i) continue;
          minor[rr][cc++] = m[r][c];
        }
        ++rr;
      }
      expr cof = minor.size() <= 4 ? det_cofactor(minor, t.vars())
                                   : det_bareiss(minor, t.vars());
      if ((i + j) % 2 == 1) cof = -cof;
      out.at({static_cast<int>(i), static_cast<int>(j)}) = cof / d;
    }
  }
  return out;
}

} // namespace dnb
