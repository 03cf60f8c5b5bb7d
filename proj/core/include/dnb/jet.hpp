#ifndef DNB_JET_HPP
#define DNB_JET_HPP

#include <dnb/errors.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

namespace dnb {

//! Order-2 Taylor jet in n variables: value, gradient and the upper triangle
//! of the Hessian, propagated through arithmetic. Entry (i,j), i <= j, of the
//! Hessian lives at i*n - i*(i-1)/2 + (j-i).
class jet2 {
public:
  jet2() : n_(0), value_(0) {}
  explicit jet2(std::size_t n, double value = 0)
      : n_(n), value_(value), grad_(n, 0.0), hess_(n * (n + 1) / 2, 0.0) {}

  static jet2 constant(std::size_t n, double c) { return jet2(n, c); }
  static jet2 variable(std::size_t n, std::size_t i, double x) {
    jet2 j(n, x);
    j.grad_[i] = 1.0;
    return j;
  }

  std::size_t dim() const { return n_; }
  double value() const { return value_; }
  double grad(std::size_t i) const { return grad_[i]; }
  double hess(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return hess_[pos(i, j)];
  }

  jet2 operator-() const {
    jet2 r = *this;
    r.value_ = -r.value_;
    for (double& g : r.grad_) g = -g;
    for (double& h : r.hess_) h = -h;
    return r;
  }

  jet2 operator+(const jet2& o) const {
    jet2 r = *this;
    r.value_ += o.value_;
    for (std::size_t i = 0; i < grad_.size(); ++i) r.grad_[i] += o.grad_[i];
    for (std::size_t i = 0; i < hess_.size(); ++i) r.hess_[i] += o.hess_[i];
    return r;
  }

  jet2 operator-(const jet2& o) const { return *this + (-o); }

  jet2 operator*(const jet2& o) const {
    jet2 r(n_);
    r.value_ = value_ * o.value_;
    for (std::size_t i = 0; i < n_; ++i)
      r.grad_[i] = grad_[i] * o.value_ + value_ * o.grad_[i];
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        r.hess_[pos(i, j)] = hess_[pos(i, j)] * o.value_ + value_ * o.hess_[pos(i, j)] +
                             grad_[i] * o.grad_[j] + grad_[j] * o.grad_[i];
    return r;
  }

  //! Reciprocal; throws at a (numerical) pole.
  jet2 reciprocal(double pole_eps = 1e-12) const {
    if (std::fabs(value_) <= pole_eps)
      throw division_by_zero("jet evaluation hit a pole of the denominator");
    jet2 r(n_);
    double w = 1.0 / value_, w2 = w * w, w3 = w2 * w;
    r.value_ = w;
    for (std::size_t i = 0; i < n_; ++i) r.grad_[i] = -grad_[i] * w2;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        r.hess_[pos(i, j)] = 2.0 * grad_[i] * grad_[j] * w3 - hess_[pos(i, j)] * w2;
    return r;
  }

  jet2 operator/(const jet2& o) const { return *this * o.reciprocal(); }

private:
  std::size_t pos(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t n_;
  double value_;
  std::vector<double> grad_;
  std::vector<double> hess_;
};

} // namespace dnb

#endif
