#pragma once

// Scalar backends for the algebra library.
//
// Three fields are supported:
//   RationalField    -- exact arbitrary-precision rationals (the default for
//                       all structural checks)
//   ComplexField     -- complex binary64 with a comparison tolerance carried
//                       in the field object, never in the values
//   CyclotomicField  -- exact elements of Q(zeta_N), see cyclotomic.hpp
//
// Generic algorithms are templated on the field type F and use F::Elem for
// values.  All zero tests and equality comparisons go through the field so
// that the floating tolerance stays in one place.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace leibniz {

// Expression templates are disabled so arithmetic results are plain values;
// generic template code stores intermediates in deduced types.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline std::string rational_to_string(const Rational& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Accepts "p", "-p", "p/q".
inline Rational rational_from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    const Int num(s.substr(0, slash));
    const Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

// Exact k-th root of a rational, if one exists.
inline std::optional<Rational> rational_nth_root(const Rational& r, unsigned k) {
  if (k == 0) throw std::invalid_argument("0th root");
  if (k == 1) return r;
  if (r == 0) return Rational(0);
  if (r < 0 && k % 2 == 0) return std::nullopt;
  const bool neg = r < 0;
  const Rational a = neg ? Rational(-r) : r;
  auto int_root = [&](const Int& v) -> std::optional<Int> {
    if (v == 1) return Int(1);
    Int lo = 1, hi = 1;
    while (boost::multiprecision::pow(hi, k) < v) hi <<= 1;
    while (lo < hi) {
      Int mid = (lo + hi) / 2;
      if (boost::multiprecision::pow(mid, k) < v)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (boost::multiprecision::pow(lo, k) == v) return lo;
    return std::nullopt;
  };
  const auto rn = int_root(Int(boost::multiprecision::numerator(a)));
  if (!rn) return std::nullopt;
  const auto rd = int_root(Int(boost::multiprecision::denominator(a)));
  if (!rd) return std::nullopt;
  Rational root(*rn, *rd);
  return neg ? Rational(-root) : root;
}

struct RationalField {
  using Elem = Rational;
  static constexpr bool is_exact = true;

  static std::string name() { return "rational"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_rational(const Rational& r) const { return r; }

  bool is_zero(const Elem& a) const { return a == 0; }
  // Structural zero, safe to elide in arithmetic shortcuts.
  bool definitely_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  double abs_approx(const Elem& a) const {
    return std::abs(static_cast<double>(a));
  }
  std::complex<double> to_complex(const Elem& a) const {
    return {static_cast<double>(a), 0.0};
  }
  std::string to_string(const Elem& a) const { return rational_to_string(a); }

  std::optional<Elem> sqrt(const Elem& a) const { return rational_nth_root(a, 2); }
  std::optional<Elem> nth_root(const Elem& a, unsigned k) const {
    return rational_nth_root(a, k);
  }
  // Only the square roots of unity live in Q.
  std::optional<Elem> root_of_unity(long m, long t) const {
    if (t <= 0) throw std::invalid_argument("root order must be positive");
    m = ((m % t) + t) % t;
    if (m == 0) return Elem(1);
    if (2 * m == t) return Elem(-1);
    return std::nullopt;
  }
};

struct ComplexField {
  using Elem = std::complex<double>;
  static constexpr bool is_exact = false;

  double tol = 1e-9;

  explicit ComplexField(double tolerance = 1e-9) : tol(tolerance) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  }

  static std::string name() { return "complex"; }

  Elem zero() const { return {0.0, 0.0}; }
  Elem one() const { return {1.0, 0.0}; }
  Elem from_int(long v) const { return {static_cast<double>(v), 0.0}; }
  Elem from_rational(const Rational& r) const {
    return {static_cast<double>(r), 0.0};
  }

  bool is_zero(const Elem& a) const { return std::abs(a) <= tol; }
  // Exact zero only: sub-tolerance values are semantically zero but must not
  // be dropped from arithmetic, where they may be the whole result's scale.
  bool definitely_zero(const Elem& a) const { return a.real() == 0.0 && a.imag() == 0.0; }
  // Absolute near zero, relative at scale; verification residuals on
  // normalized data reduce to the plain |a - b| <= tol reading.
  bool eq(const Elem& a, const Elem& b) const {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
  }
  double abs_approx(const Elem& a) const { return std::abs(a); }
  std::complex<double> to_complex(const Elem& a) const { return a; }
  std::string to_string(const Elem& a) const {
    std::ostringstream os;
    os.precision(17);
    os << a.real();
    if (a.imag() != 0) os << (a.imag() > 0 ? "+" : "") << a.imag() << "i";
    return os.str();
  }

  std::optional<Elem> sqrt(const Elem& a) const { return std::sqrt(a); }
  // Principal branch.
  std::optional<Elem> nth_root(const Elem& a, unsigned k) const {
    if (k == 0) throw std::invalid_argument("0th root");
    if (is_zero(a)) return zero();
    return std::pow(a, Elem(1.0 / static_cast<double>(k), 0.0));
  }
  std::optional<Elem> root_of_unity(long m, long t) const {
    if (t <= 0) throw std::invalid_argument("root order must be positive");
    const double theta = 2.0 * M_PI * static_cast<double>(m) / static_cast<double>(t);
    return Elem{std::cos(theta), std::sin(theta)};
  }
};

// Integer power with division for negative exponents.
template <class F>
typename F::Elem elem_pow(const F& f, typename F::Elem base, long e) {
  if (e < 0) {
    if (f.is_zero(base)) throw std::domain_error("elem_pow: negative power of zero");
    base = f.one() / base;
    e = -e;
  }
  auto acc = f.one();
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

}  // namespace leibniz
