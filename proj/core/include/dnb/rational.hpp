#ifndef DNB_RATIONAL_HPP
#define DNB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dnb {

//! Arbitrary-precision integer.
using bigint = boost::multiprecision::cpp_int;

//! Exact rational number; always stored reduced with positive denominator.
using rational = boost::multiprecision::cpp_rational;

inline bigint numer(const rational& r) { return boost::multiprecision::numerator(r); }
inline bigint denom(const rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const rational& r) { return denom(r) == 1; }

inline bigint gcd(const bigint& a, const bigint& b) { return boost::multiprecision::gcd(a, b); }
inline bigint lcm(const bigint& a, const bigint& b) { return boost::multiprecision::lcm(a, b); }

//! String form "p" or "p/q".
inline std::string to_string(const rational& r) { return r.str(); }

inline double to_double(const rational& r) { return r.template convert_to<double>(); }

} // namespace dnb

#endif
