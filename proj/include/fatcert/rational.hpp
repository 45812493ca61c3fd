#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace fatcert {

using Rational = mpq_class;

/// Canonicalized p/q. mpq_class(p, q) alone does not reduce.
inline Rational make_rational(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q".
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Scalar policy used by the templated kernels. Exact types compare with
/// zero exactly; floating types use an absolute tolerance supplied by the
/// caller (already scaled to the problem).
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational abs(const Rational& x) { return ::abs(x); }
  static Rational from_long(long v) { return Rational(v); }
  static Rational from_rational(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol = 1e-12) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_rational(const Rational& r) { return r.get_d(); }
};

}  // namespace fatcert
