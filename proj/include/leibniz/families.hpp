#pragma once

// Constructors for the explicit algebras under study: the two maximal
// nilindex chain models, the two parametric families realizing
// characteristic sequence (n | m-1, 1) with nilindex n+m (m = n+1 and
// m = n+2), and the bracket induced on an associative superalgebra by a
// multiplication-compatible linear map D.

#include "leibniz/rng.hpp"
#include "leibniz/superalgebra.hpp"

namespace leibniz {

enum class FamilyTag { A, B };

inline std::string family_name(FamilyTag t) { return t == FamilyTag::A ? "A" : "B"; }

// Parameters (gamma, beta_{t0}, ..., beta_n, beta) of the m = n+1 family,
// with t0 = floor((n+4)/2); m is derived, never stored.
template <class F>
struct FamilyAParams {
  using Elem = typename F::Elem;
  int n = 0;
  Elem gamma;
  std::vector<Elem> beta;  // beta[t] holds beta_{t0 + t}
  Elem beta_last;

  static int t0(int n) { return (n + 4) / 2; }
  static size_t beta_count(int n) { return static_cast<size_t>(n - t0(n) + 1); }
  int m() const { return n + 1; }

  void validate() const {
    if (n < 3) throw std::invalid_argument("family A: n below minimum (n >= 3)");
    if (beta.size() != beta_count(n))
      throw std::invalid_argument("family A: expected " + std::to_string(beta_count(n)) +
                                  " beta parameters, got " + std::to_string(beta.size()));
  }

  // Flat layout [gamma, beta..., beta_last] used by the canonicalizer.
  std::vector<Elem> flat() const {
    std::vector<Elem> v{gamma};
    v.insert(v.end(), beta.begin(), beta.end());
    v.push_back(beta_last);
    return v;
  }
  static FamilyAParams from_flat(int n, const std::vector<Elem>& v) {
    if (v.size() != beta_count(n) + 2)
      throw std::invalid_argument("family A: flat parameter vector has wrong length");
    FamilyAParams p;
    p.n = n;
    p.gamma = v.front();
    p.beta.assign(v.begin() + 1, v.end() - 1);
    p.beta_last = v.back();
    return p;
  }
};

// Parameters (beta_{s0}, ..., beta_{n+1}) of the m = n+2 family, with
// s0 = floor((n+5)/2).
template <class F>
struct FamilyBParams {
  using Elem = typename F::Elem;
  int n = 0;
  std::vector<Elem> beta;  // beta[t] holds beta_{s0 + t}

  static int s0(int n) { return (n + 5) / 2; }
  static size_t beta_count(int n) { return static_cast<size_t>(n + 2 - s0(n)); }
  int m() const { return n + 2; }

  void validate() const {
    if (n < 3) throw std::invalid_argument("family B: n below minimum (n >= 3)");
    if (beta.size() != beta_count(n))
      throw std::invalid_argument("family B: expected " + std::to_string(beta_count(n)) +
                                  " beta parameters, got " + std::to_string(beta.size()));
  }

  std::vector<Elem> flat() const { return beta; }
  static FamilyBParams from_flat(int n, const std::vector<Elem>& v) {
    if (v.size() != beta_count(n))
      throw std::invalid_argument("family B: flat parameter vector has wrong length");
    FamilyBParams p;
    p.n = n;
    p.beta = v;
    return p;
  }
};

// Single chain [e_i, e_1] = e_{i+1}; the null-filiform Leibniz algebra, all even.
template <class F>
SuperAlgebra<F> build_model_1(int dim, const F& f) {
  if (dim < 1) throw std::invalid_argument("model1: dimension must be at least 1");
  std::vector<std::string> labels;
  std::vector<Parity> par(dim, Parity::even);
  for (int i = 1; i <= dim; ++i) labels.push_back("e" + std::to_string(i));
  SuperAlgebra<F> alg(GradedBasis(std::move(labels), std::move(par)), f);
  for (int i = 1; i <= dim - 1; ++i) alg.set_c(i - 1, 0, i, f.one());
  return alg;
}

// Chain with the doubled second column, graded by alternating parities with
// e_1 odd; that assignment realizes exactly the admissible (n, m) splits
// m = n (even total) and m = n+1 (odd total).
template <class F>
SuperAlgebra<F> build_model_2(int n, int m, const F& f) {
  if (n < 0 || m < 1 || (m != n && m != n + 1))
    throw std::invalid_argument("model2: requires m = n or m = n + 1");
  const int d = n + m;
  std::vector<std::string> labels;
  std::vector<Parity> par;
  for (int i = 1; i <= d; ++i) {
    labels.push_back("e" + std::to_string(i));
    par.push_back(i % 2 == 1 ? Parity::odd : Parity::even);
  }
  SuperAlgebra<F> alg(GradedBasis(std::move(labels), std::move(par)), f);
  for (int i = 1; i <= d - 1; ++i) alg.set_c(i - 1, 0, i, f.one());
  for (int i = 1; i <= d - 2; ++i) alg.set_c(i - 1, 1, i + 1, f.from_int(2));
  return alg;
}

template <class F>
SuperAlgebra<F> build_family_A(const FamilyAParams<F>& p, const F& f) {
  p.validate();
  const int n = p.n;
  const int t0 = FamilyAParams<F>::t0(n);
  const auto half = f.from_rational(Rational(1, 2));
  const auto two = f.from_int(2);
  auto X = [&](int i) { return static_cast<size_t>(i - 1); };          // x_i
  auto Y = [&](int j) { return static_cast<size_t>(n + j - 1); };      // y_j
  auto beta = [&](int k) { return p.beta[static_cast<size_t>(k - t0)]; };

  SuperAlgebra<F> alg(GradedBasis::standard(n, n + 1), f);
  for (int i = 1; i <= n - 1; ++i) alg.set_c(X(i), X(1), X(i + 1), f.one());
  for (int j = 1; j <= n - 1; ++j) alg.set_c(Y(j), X(1), Y(j + 1), f.one());
  for (int i = 1; i <= n - 1; ++i) alg.set_c(X(i), Y(1), Y(i + 1), half);
  for (int j = 1; j <= n; ++j) alg.set_c(Y(j), Y(1), X(j), f.one());
  alg.set_c(Y(n + 1), Y(n + 1), X(n), p.gamma);
  for (int i = 1; i <= (n - 1) / 2; ++i)
    for (int k = t0; k <= n + 1 - i; ++k)
      alg.add_c(X(i), Y(n + 1), Y(k - 1 + i), beta(k));
  for (int k = t0; k <= n; ++k)
    alg.add_c(Y(1), Y(n + 1), X(k - 1), -two * beta(k));
  alg.add_c(Y(1), Y(n + 1), X(n), p.beta_last);
  for (int j = 2; j <= (n + 1) / 2; ++j)
    for (int k = t0; k <= n + 2 - j; ++k)
      alg.add_c(Y(j), Y(n + 1), X(k - 2 + j), -two * beta(k));
  return alg;
}

template <class F>
SuperAlgebra<F> build_family_B(const FamilyBParams<F>& p, const F& f) {
  p.validate();
  const int n = p.n;
  const int s0 = FamilyBParams<F>::s0(n);
  const auto half = f.from_rational(Rational(1, 2));
  const auto two = f.from_int(2);
  auto X = [&](int i) { return static_cast<size_t>(i - 1); };
  auto Y = [&](int j) { return static_cast<size_t>(n + j - 1); };
  auto beta = [&](int k) { return p.beta[static_cast<size_t>(k - s0)]; };

  SuperAlgebra<F> alg(GradedBasis::standard(n, n + 2), f);
  for (int i = 1; i <= n - 1; ++i) alg.set_c(X(i), X(1), X(i + 1), f.one());
  for (int j = 1; j <= n; ++j) alg.set_c(Y(j), X(1), Y(j + 1), f.one());
  for (int i = 1; i <= n; ++i) alg.set_c(X(i), Y(1), Y(i + 1), half);
  for (int j = 1; j <= n; ++j) alg.set_c(Y(j), Y(1), X(j), f.one());
  for (int i = 1; i <= n / 2; ++i)
    for (int k = s0; k <= n + 2 - i; ++k)
      alg.add_c(X(i), Y(n + 2), Y(k - 1 + i), beta(k));
  for (int j = 1; j <= n / 2; ++j)
    for (int k = s0; k <= n + 2 - j; ++k)
      alg.add_c(Y(j), Y(n + 2), X(k - 2 + j), -two * beta(k));
  return alg;
}

// An associative Z2-graded algebra together with a linear map D subject to
// D(a(Db)) = Da Db = D((Da)b); the induced bracket <a,b> = a(Db) - (-1)^{ab} D(b)a
// is then a Leibniz superalgebra product.
template <class F>
struct AssociativeSuperAlgebra {
  using Elem = typename F::Elem;
  GradedBasis basis;
  std::vector<Elem> product_tensor;  // e_i * e_j = sum_k t[i][j][k] e_k
  Matrix<F> d_map;                   // columns are images of basis vectors

  const Elem& t(size_t i, size_t j, size_t k) const {
    return product_tensor[(i * basis.dim() + j) * basis.dim() + k];
  }

  Vec<F> multiply(const Vec<F>& u, const Vec<F>& v, const F& f) const {
    const size_t d = basis.dim();
    Vec<F> out(d, f.zero());
    for (size_t i = 0; i < d; ++i) {
      if (f.definitely_zero(u[i])) continue;
      for (size_t j = 0; j < d; ++j) {
        if (f.definitely_zero(v[j])) continue;
        const auto coef = u[i] * v[j];
        for (size_t k = 0; k < d; ++k)
          if (!f.definitely_zero(t(i, j, k))) out[k] += coef * t(i, j, k);
      }
    }
    return out;
  }

  void validate(const F& f) const {
    const size_t d = basis.dim();
    if (product_tensor.size() != d * d * d)
      throw std::invalid_argument("associative algebra: tensor size mismatch");
    if (d_map.rows != d || d_map.cols != d)
      throw std::invalid_argument("associative algebra: D has wrong shape");
    auto unit = [&](size_t i) {
      Vec<F> v(d, f.zero());
      v[i] = f.one();
      return v;
    };
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k) {
          const auto lhs = multiply(multiply(unit(i), unit(j), f), unit(k), f);
          const auto rhs = multiply(unit(i), multiply(unit(j), unit(k), f), f);
          for (size_t p = 0; p < d; ++p)
            if (!f.eq(lhs[p], rhs[p]))
              throw std::invalid_argument("associativity fails on basis triple (" +
                                          std::to_string(i) + "," + std::to_string(j) + "," +
                                          std::to_string(k) + ")");
        }
    for (size_t j = 0; j < d; ++j)
      for (size_t i = 0; i < d; ++i)
        if (!f.is_zero(d_map.at(i, j)) && basis.parity[i] != basis.parity[j])
          throw std::invalid_argument("D is not parity-preserving at column " +
                                      std::to_string(j));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        const auto a = unit(i), b = unit(j);
        const auto da = matvec(d_map, a, f), db = matvec(d_map, b, f);
        const auto mid = multiply(da, db, f);                    // Da Db
        const auto left = matvec(d_map, multiply(a, db, f), f);  // D(a(Db))
        const auto right = matvec(d_map, multiply(da, b, f), f); // D((Da)b)
        for (size_t p = 0; p < d; ++p)
          if (!f.eq(left[p], mid[p]) || !f.eq(right[p], mid[p]))
            throw std::invalid_argument("D-condition fails on basis pair (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }
};

template <class F>
SuperAlgebra<F> construct_from_associative_D(const AssociativeSuperAlgebra<F>& s, const F& f) {
  s.validate(f);
  const size_t d = s.basis.dim();
  SuperAlgebra<F> alg(s.basis, f);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Vec<F> a(d, f.zero()), b(d, f.zero());
      a[i] = f.one();
      b[j] = f.one();
      const auto db = matvec(s.d_map, b, f);
      auto out = s.multiply(a, db, f);
      const auto sign = both_odd(s.basis.parity[i], s.basis.parity[j]) ? -f.one() : f.one();
      const auto back = s.multiply(db, a, f);
      for (size_t k = 0; k < d; ++k) {
        out[k] -= sign * back[k];
        if (!f.is_zero(out[k])) alg.set_c(i, j, k, out[k]);
      }
    }
  if (!check_graded_leibniz(alg).pass)
    throw std::logic_error("D-construction produced a non-Leibniz bracket");
  return alg;
}

// Seeded parameter draws used throughout the verification suites.
template <class F>
FamilyAParams<F> random_family_a_params(int n, SeededRng& rng, const F& f) {
  FamilyAParams<F> p;
  p.n = n;
  p.gamma = f.from_rational(rng.rational());
  for (size_t t = 0; t < FamilyAParams<F>::beta_count(n); ++t)
    p.beta.push_back(f.from_rational(rng.rational()));
  p.beta_last = f.from_rational(rng.rational());
  return p;
}

template <class F>
FamilyBParams<F> random_family_b_params(int n, SeededRng& rng, const F& f) {
  FamilyBParams<F> p;
  p.n = n;
  for (size_t t = 0; t < FamilyBParams<F>::beta_count(n); ++t)
    p.beta.push_back(f.from_rational(rng.rational()));
  return p;
}

}  // namespace leibniz
