#ifndef DNB_ERRORS_HPP
#define DNB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dnb {

//! Base class for all errors raised by the library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

//! Malformed expression text or fixture content. Carries a byte offset when known.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

//! Division by an expression that normalizes to zero, or evaluation at a pole.
class division_by_zero : public error {
public:
  using error::error;
};

//! A metric whose determinant vanishes identically was passed to an
//! operation that needs an inverse.
class degenerate_metric : public error {
public:
  explicit degenerate_metric(const std::string& what, int alpha = -1)
      : error(what), alpha_(alpha) {}
  //! 1-based spatial direction of the offending metric, or -1 if not applicable.
  int alpha() const { return alpha_; }

private:
  int alpha_;
};

//! A metric required to be flat has nonvanishing curvature.
class non_flat_metric : public error {
public:
  explicit non_flat_metric(const std::string& what, int alpha = -1)
      : error(what), alpha_(alpha) {}
  int alpha() const { return alpha_; }

private:
  int alpha_;
};

//! The pencil of two metrics is degenerate for every coefficient choice.
class degenerate_pencil : public error {
public:
  using error::error;
};

//! A coordinate change whose Jacobian determinant vanishes identically.
class non_invertible_change : public error {
public:
  using error::error;
};

//! Input bracket fails the closedness relations where a Poisson bracket is required.
class not_a_poisson_bracket : public error {
public:
  using error::error;
};

//! Internal cross-checks disagreed. Always a bug in the engine, never user error.
class engine_error : public error {
public:
  using error::error;
};

} // namespace dnb

#endif
