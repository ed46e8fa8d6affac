#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_N): elements are rational
// coefficient vectors reduced modulo the N-th cyclotomic polynomial Phi_N.
// One conductor N is fixed per field object; elements remember their
// conductor and refuse to mix with a different one.  Elements with no
// attached conductor are plain rational constants and combine with anything.

#include "leibniz/fields.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <vector>

namespace leibniz {

namespace detail {

using Poly = std::vector<Rational>;  // coefficient list, lowest degree first

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

// Euclidean division: returns quotient, leaves remainder in a.
inline Poly poly_divmod(Poly& a, const Poly& b) {
  poly_trim(a);
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  while (a.size() >= b.size()) {
    const Rational f = a.back() / lead;
    const size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
    if (a.empty()) break;
  }
  return q;
}

// Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
inline Poly cyclotomic_poly(unsigned n) {
  if (n == 0) throw std::invalid_argument("conductor must be positive");
  Poly num(n + 1, Rational(0));
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const Poly phi_d = cyclotomic_poly(d);
    const Poly q = poly_divmod(num, phi_d);
    num = q;
  }
  return num;
}

}  // namespace detail

class CyclotomicField {
 public:
  struct Core {
    unsigned conductor;
    detail::Poly modulus;  // Phi_N, monic
    size_t degree;         // deg Phi_N = phi(N)
  };

  struct Elem {
    std::shared_ptr<const Core> core;  // null: rational constant in c[0]
    std::vector<Rational> c;

    Elem() : c{Rational(0)} {}
    explicit Elem(Rational r) : c{std::move(r)} {}

    bool rational_only() const { return core == nullptr; }

    friend Elem operator-(const Elem& a) {
      Elem out = a;
      for (auto& x : out.c) x = -x;
      return out;
    }
    friend Elem operator+(const Elem& a, const Elem& b) {
      auto [x, y, core] = aligned(a, b);
      for (size_t i = 0; i < y.size(); ++i) x[i] += y[i];
      return make(core, std::move(x));
    }
    friend Elem operator-(const Elem& a, const Elem& b) {
      auto [x, y, core] = aligned(a, b);
      for (size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
      return make(core, std::move(x));
    }
    friend Elem operator*(const Elem& a, const Elem& b) {
      auto [x, y, core] = aligned(a, b);
      detail::Poly prod = detail::poly_mul(x, y);
      if (core) detail::poly_divmod(prod, core->modulus);
      return make(core, std::move(prod));
    }
    friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inverse(); }

    Elem& operator+=(const Elem& b) { return *this = *this + b; }
    Elem& operator-=(const Elem& b) { return *this = *this - b; }
    Elem& operator*=(const Elem& b) { return *this = *this * b; }
    Elem& operator/=(const Elem& b) { return *this = *this / b; }

    bool is_zero_value() const {
      return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
    }

    // Inverse via the extended Euclidean algorithm against the modulus.
    Elem inverse() const {
      if (is_zero_value()) throw std::domain_error("division by zero in cyclotomic field");
      if (!core) {
        Elem out;
        out.c = {Rational(1) / c[0]};
        return out;
      }
      detail::Poly r0 = core->modulus, r1 = c;
      detail::poly_trim(r1);
      detail::Poly s0 = {}, s1 = {Rational(1)};
      while (!r1.empty()) {
        detail::Poly r0_copy = r0;
        detail::Poly q = detail::poly_divmod(r0_copy, r1);
        detail::Poly r2 = std::move(r0_copy);
        // s2 = s0 - q*s1
        detail::Poly qs = detail::poly_mul(q, s1);
        detail::Poly s2 = s0;
        if (s2.size() < qs.size()) s2.resize(qs.size(), Rational(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        detail::poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      // r0 = gcd, a constant since Phi_N is irreducible and c != 0 mod Phi_N
      if (r0.size() != 1)
        throw std::domain_error("not invertible modulo the cyclotomic relation");
      const Rational g = r0[0];
      detail::Poly inv = s0;
      for (auto& x : inv) x /= g;
      detail::poly_divmod(inv, core->modulus);
      return make(core, std::move(inv));
    }

   private:
    static Elem make(std::shared_ptr<const Core> core, detail::Poly coeffs) {
      Elem out;
      out.core = std::move(core);
      if (out.core) {
        coeffs.resize(out.core->degree, Rational(0));
      } else {
        if (coeffs.empty()) coeffs = {Rational(0)};
        coeffs.resize(1);
      }
      out.c = std::move(coeffs);
      return out;
    }

    // Resolves the two operand conductors; rejects genuine mixes.
    static std::tuple<detail::Poly, detail::Poly, std::shared_ptr<const Core>> aligned(
        const Elem& a, const Elem& b) {
      std::shared_ptr<const Core> core;
      if (a.core && b.core) {
        if (a.core->conductor != b.core->conductor)
          throw std::invalid_argument("mixed cyclotomic conductors: " +
                                      std::to_string(a.core->conductor) + " vs " +
                                      std::to_string(b.core->conductor));
        core = a.core;
      } else {
        core = a.core ? a.core : b.core;
      }
      const size_t len = core ? core->degree : 1;
      detail::Poly x = a.c, y = b.c;
      x.resize(std::max(len, x.size()), Rational(0));
      y.resize(std::max(len, y.size()), Rational(0));
      x.resize(std::max(x.size(), y.size()), Rational(0));
      y.resize(x.size(), Rational(0));
      return {std::move(x), std::move(y), core};
    }

    friend class CyclotomicField;
  };

  static constexpr bool is_exact = true;

  explicit CyclotomicField(unsigned conductor) {
    auto core = std::make_shared<Core>();
    core->conductor = conductor;
    core->modulus = detail::cyclotomic_poly(conductor);
    core->degree = core->modulus.size() - 1;
    core_ = std::move(core);
  }

  std::string name() const { return "cyclotomic:" + std::to_string(conductor()); }
  unsigned conductor() const { return core_->conductor; }
  size_t degree() const { return core_->degree; }

  Elem zero() const { return Elem(Rational(0)); }
  Elem one() const { return Elem(Rational(1)); }
  Elem from_int(long v) const { return Elem(Rational(v)); }
  Elem from_rational(const Rational& r) const { return Elem(r); }
  Elem from_coeffs(std::vector<Rational> coeffs) const {
    if (coeffs.size() > degree())
      throw std::invalid_argument("coefficient vector longer than field degree");
    Elem out;
    out.core = core_;
    coeffs.resize(degree(), Rational(0));
    out.c = std::move(coeffs);
    return out;
  }
  // zeta_N^k
  Elem zeta_power(long k) const {
    const long n = static_cast<long>(conductor());
    k = ((k % n) + n) % n;
    detail::Poly p(static_cast<size_t>(k) + 1, Rational(0));
    p[static_cast<size_t>(k)] = 1;
    detail::poly_divmod(p, core_->modulus);
    Elem out;
    out.core = core_;
    p.resize(degree(), Rational(0));
    out.c = std::move(p);
    return out;
  }

  bool is_zero(const Elem& a) const { return a.is_zero_value(); }
  bool definitely_zero(const Elem& a) const { return a.is_zero_value(); }
  bool eq(const Elem& a, const Elem& b) const { return is_zero(a - b); }
  double abs_approx(const Elem& a) const { return std::abs(to_complex(a)); }
  std::complex<double> to_complex(const Elem& a) const {
    const double theta = 2.0 * M_PI / static_cast<double>(conductor());
    const std::complex<double> zeta{std::cos(theta), std::sin(theta)};
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = a.c.size(); i-- > 0;)
      acc = acc * zeta + std::complex<double>(static_cast<double>(a.c[i]), 0.0);
    return acc;
  }
  std::string to_string(const Elem& a) const {
    std::string out = "[";
    const size_t len = a.rational_only() ? 1 : a.c.size();
    for (size_t i = 0; i < len; ++i) {
      if (i) out += ",";
      out += rational_to_string(a.c[i]);
    }
    return out + "]";
  }

  std::optional<Elem> sqrt(const Elem& a) const {
    // Rational perfect squares only; general square roots may leave Q(zeta_N).
    if (a.rational_only()) {
      if (auto r = rational_nth_root(a.c[0], 2)) return Elem(*r);
    }
    return std::nullopt;
  }
  std::optional<Elem> nth_root(const Elem& a, unsigned k) const {
    if (a.rational_only()) {
      if (auto r = rational_nth_root(a.c[0], k)) return Elem(*r);
    }
    return std::nullopt;
  }
  // S_{m,t} = zeta_t^m; available exactly when t divides the conductor.
  std::optional<Elem> root_of_unity(long m, long t) const {
    if (t <= 0) throw std::invalid_argument("root order must be positive");
    if (conductor() % static_cast<unsigned>(t) != 0) return std::nullopt;
    return zeta_power(m * (static_cast<long>(conductor()) / t));
  }

 private:
  std::shared_ptr<const Core> core_;
};

}  // namespace leibniz
