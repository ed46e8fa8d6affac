#pragma once

// Closed-form isomorphism machinery for the two parametric families.
//
// An isomorphism between family members is determined by how the two odd
// generators are mapped; the statement-level conditions relate the parameter
// vectors through powers of the generator coefficient a1 and the top
// coefficient b.  Solvability reduces to consistency of a finite set of
// power constraints a1^d = r, which is decided exactly by pairwise gcd
// merging, so no root extraction is needed for the yes/no answer.  Witnesses
// additionally require roots and are produced whenever the scalar backend
// can represent them (always, for the complex backend).

#include "leibniz/families.hpp"
#include "leibniz/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace leibniz {

template <class F>
struct IsoWitness {
  using Elem = typename F::Elem;
  FamilyTag family = FamilyTag::A;
  int n = 0;
  Elem a1;      // coefficient of y_1 in the first generator image; nonzero
  Elem a_top;   // coefficient of y_m in the first generator image
  Elem b_top;   // coefficient of y_m in the second generator image; nonzero
  Elem b_prev;  // family B only: free coefficient of y_{n+1}; family A derives it
  // Full generator images, filled in by materialize_basis_change.
  std::vector<Elem> a_vec, b_vec;
};

template <class F>
IsoWitness<F> identity_witness(FamilyTag family, int n, const F& f) {
  IsoWitness<F> w;
  w.family = family;
  w.n = n;
  w.a1 = f.one();
  w.a_top = f.zero();
  w.b_top = f.one();
  w.b_prev = f.zero();
  return w;
}

// The parameter relations tying two family members, in flat layout.
template <class F>
struct IsoConditionSystem {
  FamilyTag family = FamilyTag::A;
  int n = 0;
  std::vector<typename F::Elem> source, target;
  // Family B: exponent in b*beta_j = a1^(2j+offset)*beta'_j.  The statement
  // form is offset -3; offset -1 is kept selectable for the empirical
  // resolution of the discrepancy with the proof form.
  long family_b_exponent_offset = -3;
};

template <class F>
IsoConditionSystem<F> make_iso_system(const FamilyAParams<F>& p, const FamilyAParams<F>& q) {
  if (p.n != q.n) throw std::invalid_argument("iso system: mismatched n");
  return {FamilyTag::A, p.n, p.flat(), q.flat(), -3};
}

template <class F>
IsoConditionSystem<F> make_iso_system(const FamilyBParams<F>& p, const FamilyBParams<F>& q,
                                      long exponent_offset = -3) {
  if (p.n != q.n) throw std::invalid_argument("iso system: mismatched n");
  return {FamilyTag::B, p.n, p.flat(), q.flat(), exponent_offset};
}

template <class F>
struct IsoDecision {
  bool isomorphic = false;
  std::string reason;
  std::optional<IsoWitness<F>> witness;  // absent when roots leave the backend
};

namespace detail {

inline std::tuple<long, long, long> ext_gcd(long a, long b) {
  if (b == 0) return {a, 1, 0};
  auto [g, u, v] = ext_gcd(b, a % b);
  return {g, v, u - (a / b) * v};
}

// Conjunction of power constraints a1^d = r over the multiplicative group of
// the field's algebraic closure.  Solvability over C is equivalent to the
// pairwise compatibility r1^(d2/g) = r2^(d1/g); all checks stay inside the
// coefficient field.
template <class F>
class PowerConstraints {
 public:
  explicit PowerConstraints(const F& f) : f_(&f) {}

  void add(long d, typename F::Elem r) {
    if (failed_) return;
    if (d < 0) {
      d = -d;
      r = f_->one() / r;
    }
    if (d == 0) {
      if (!f_->eq(r, f_->one())) failed_ = true;
      return;
    }
    if (!merged_) {
      merged_ = std::make_pair(d, std::move(r));
      return;
    }
    auto [g, u, v] = ext_gcd(merged_->first, d);
    const auto lhs = elem_pow(*f_, merged_->second, d / g);
    const auto rhs = elem_pow(*f_, r, merged_->first / g);
    if (!f_->eq(lhs, rhs)) {
      failed_ = true;
      return;
    }
    merged_ = std::make_pair(
        g, elem_pow(*f_, merged_->second, u) * elem_pow(*f_, r, v));
  }

  bool failed() const { return failed_; }
  // (g, R) with the full system equivalent to a1^g = R; absent if no
  // constraint was imposed.
  const std::optional<std::pair<long, typename F::Elem>>& merged() const { return merged_; }

 private:
  const F* f_;
  bool failed_ = false;
  std::optional<std::pair<long, typename F::Elem>> merged_;
};

}  // namespace detail

// Forward parameter maps induced by a witness.
template <class F>
FamilyAParams<F> induced_params(const FamilyAParams<F>& p, const IsoWitness<F>& w, const F& f) {
  const int n = p.n;
  const int t0 = FamilyAParams<F>::t0(n);
  const auto& a1 = w.a1;
  const auto& b = w.b_top;
  FamilyAParams<F> out;
  out.n = n;
  out.gamma = b * b * p.gamma / elem_pow(f, a1, 2L * n);
  for (int j = t0; j <= n; ++j)
    out.beta.push_back(b * p.beta[j - t0] / elem_pow(f, a1, 2L * j - 3));
  auto rhs = w.a_top * b * p.gamma + a1 * b * p.beta_last;
  if (n % 2 == 1) {
    const auto beta_t0_target = out.beta.front();
    rhs -= f.from_int(4) * beta_t0_target * elem_pow(f, a1, n) * w.a_top * p.beta.front();
  }
  out.beta_last = rhs / elem_pow(f, a1, 2L * n);
  return out;
}

template <class F>
FamilyBParams<F> induced_params(const FamilyBParams<F>& p, const IsoWitness<F>& w, const F& f,
                                long exponent_offset = -3) {
  const int s0 = FamilyBParams<F>::s0(p.n);
  FamilyBParams<F> out;
  out.n = p.n;
  for (int j = s0; j <= p.n + 1; ++j)
    out.beta.push_back(w.b_top * p.beta[j - s0] / elem_pow(f, w.a1, 2L * j + exponent_offset));
  return out;
}

template <class F>
IsoDecision<F> iso_solvable(const IsoConditionSystem<F>& sys, const F& f) {
  const int n = sys.n;
  const bool odd = (n % 2 == 1);
  auto no = [&](std::string why) {
    IsoDecision<F> d;
    d.isomorphic = false;
    d.reason = std::move(why);
    return d;
  };

  detail::PowerConstraints<F> cons(f);
  std::optional<std::pair<long, typename F::Elem>> b_anchor;  // b = a1^first * second

  if (sys.family == FamilyTag::A) {
    const auto p = FamilyAParams<F>::from_flat(n, sys.source);
    const auto q = FamilyAParams<F>::from_flat(n, sys.target);
    const int t0 = FamilyAParams<F>::t0(n);
    const bool gamma_zero = f.is_zero(p.gamma);
    if (gamma_zero != f.is_zero(q.gamma)) return no("gamma vanishes on exactly one side");
    std::vector<int> nz;
    for (int j = t0; j <= n; ++j) {
      const bool lz = f.is_zero(p.beta[j - t0]), rz = f.is_zero(q.beta[j - t0]);
      if (lz != rz) return no("beta_" + std::to_string(j) + " vanishes on exactly one side");
      if (!lz) nz.push_back(j);
    }
    for (size_t t = 1; t < nz.size(); ++t) {
      const int j = nz[t - 1], jp = nz[t];
      cons.add(2L * (jp - j),
               q.beta[j - t0] * p.beta[jp - t0] / (p.beta[j - t0] * q.beta[jp - t0]));
    }
    if (!nz.empty())
      b_anchor = {2L * nz.front() - 3, q.beta[nz.front() - t0] / p.beta[nz.front() - t0]};

    const bool beta_t0_nonzero = !f.is_zero(p.beta.front());
    bool beta_last_constrained = false;
    if (!gamma_zero) {
      if (!nz.empty()) {
        const int j = nz.front();
        const auto ratio = p.beta[j - t0] / q.beta[j - t0];
        cons.add(4L * j - 6 - 2L * n, (q.gamma / p.gamma) * ratio * ratio);
      }
      // Degenerate middle case: the top-coefficient relation loses its free
      // unknown exactly when gamma = 4 beta_{t0}^2.
      if (odd && beta_t0_nonzero && f.is_zero(p.gamma - f.from_int(4) * p.beta.front() * p.beta.front()))
        beta_last_constrained = true;
    } else {
      if (!(odd && beta_t0_nonzero)) beta_last_constrained = true;
    }

    if (beta_last_constrained) {
      const bool lz = f.is_zero(p.beta_last), rz = f.is_zero(q.beta_last);
      if (lz != rz) return no("the trailing beta vanishes on exactly one side");
      if (!lz) {
        if (gamma_zero) {
          // beta acts as the formal index n+1 entry of the beta sequence.
          const long jl = 2L * (n + 1) - 3;
          if (!nz.empty()) {
            const int j = nz.back();
            cons.add(jl - (2L * j - 3),
                     q.beta[j - t0] * p.beta_last / (p.beta[j - t0] * q.beta_last));
          } else {
            b_anchor = {jl, q.beta_last / p.beta_last};
          }
        } else {
          // gamma = 4 beta_{t0}^2 != 0: substituting b pinned by beta_{t0}
          // into the top relation leaves a pure power condition.
          cons.add(n - 1L, q.beta.front() * p.beta_last / (p.beta.front() * q.beta_last));
        }
      }
    }
    if (cons.failed()) return no("power constraints on a1 are inconsistent");

    IsoDecision<F> dec;
    dec.isomorphic = true;
    // Witness, when the required roots exist in this backend.
    std::optional<typename F::Elem> a1;
    if (cons.merged()) {
      if (auto root = f.nth_root(cons.merged()->second,
                                 static_cast<unsigned>(cons.merged()->first)))
        a1 = *root;
    } else {
      a1 = f.one();
    }
    if (a1) {
      std::optional<typename F::Elem> b;
      if (b_anchor) {
        b = elem_pow(f, *a1, b_anchor->first) * b_anchor->second;
      } else if (!gamma_zero) {
        if (auto s = f.sqrt(q.gamma / p.gamma)) b = elem_pow(f, *a1, n) * (*s);
      } else {
        b = f.one();
      }
      if (b && !f.is_zero(*b)) {
        IsoWitness<F> w;
        w.family = FamilyTag::A;
        w.n = n;
        w.a1 = *a1;
        w.b_top = *b;
        w.b_prev = f.zero();
        auto coeff = (*b) * p.gamma;
        if (odd && beta_t0_nonzero)
          coeff -= f.from_int(4) * (q.beta.front()) * p.beta.front() * elem_pow(f, *a1, n);
        if (!f.is_zero(coeff)) {
          const auto rhs =
              elem_pow(f, *a1, 2L * n) * q.beta_last - (*a1) * (*b) * p.beta_last;
          w.a_top = rhs / coeff;
        } else {
          w.a_top = f.zero();
        }
        if constexpr (F::is_exact) {
          const auto check = induced_params(p, w, f);
          bool ok = f.eq(check.gamma, q.gamma) && f.eq(check.beta_last, q.beta_last);
          for (size_t t = 0; t < check.beta.size() && ok; ++t)
            ok = f.eq(check.beta[t], q.beta[t]);
          if (!ok) throw std::logic_error("iso_solvable: witness failed the induced-parameter check");
        }
        dec.witness = std::move(w);
      }
    }
    return dec;
  }

  // Family B.
  const auto p = FamilyBParams<F>::from_flat(n, sys.source);
  const auto q = FamilyBParams<F>::from_flat(n, sys.target);
  const int s0 = FamilyBParams<F>::s0(n);
  std::vector<int> nz;
  for (int j = s0; j <= n + 1; ++j) {
    const bool lz = f.is_zero(p.beta[j - s0]), rz = f.is_zero(q.beta[j - s0]);
    if (lz != rz) return no("beta_" + std::to_string(j) + " vanishes on exactly one side");
    if (!lz) nz.push_back(j);
  }
  for (size_t t = 1; t < nz.size(); ++t) {
    const int j = nz[t - 1], jp = nz[t];
    cons.add(2L * (jp - j), q.beta[j - s0] * p.beta[jp - s0] / (p.beta[j - s0] * q.beta[jp - s0]));
  }
  if (cons.failed()) return no("power constraints on a1 are inconsistent");
  IsoDecision<F> dec;
  dec.isomorphic = true;
  std::optional<typename F::Elem> a1;
  if (cons.merged()) {
    if (auto root =
            f.nth_root(cons.merged()->second, static_cast<unsigned>(cons.merged()->first)))
      a1 = *root;
  } else {
    a1 = f.one();
  }
  if (a1) {
    IsoWitness<F> w;
    w.family = FamilyTag::B;
    w.n = n;
    w.a1 = *a1;
    w.a_top = f.zero();
    w.b_prev = f.zero();
    if (!nz.empty()) {
      const int j = nz.front();
      w.b_top = elem_pow(f, *a1, 2L * j + sys.family_b_exponent_offset) * q.beta[j - s0] /
                p.beta[j - s0];
    } else {
      w.b_top = f.one();
    }
    if constexpr (F::is_exact) {
      const auto check = induced_params(p, w, f, sys.family_b_exponent_offset);
      for (size_t t = 0; t < check.beta.size(); ++t)
        if (!f.eq(check.beta[t], q.beta[t]))
          throw std::logic_error("iso_solvable: witness failed the induced-parameter check");
    }
    dec.witness = std::move(w);
  }
  return dec;
}

// Re-solves the system over the complex backend; a witness always exists
// there when the decision is yes (principal roots).
template <class F>
IsoDecision<ComplexField> iso_solvable_complex(const IsoConditionSystem<F>& sys, const F& f,
                                               double tol = 1e-9) {
  ComplexField cf(tol);
  IsoConditionSystem<ComplexField> csys;
  csys.family = sys.family;
  csys.n = sys.n;
  csys.family_b_exponent_offset = sys.family_b_exponent_offset;
  for (const auto& x : sys.source) csys.source.push_back(f.to_complex(x));
  for (const auto& x : sys.target) csys.target.push_back(f.to_complex(x));
  return iso_solvable(csys, cf);
}

template <class F>
struct BasisChange {
  Matrix<F> map;  // columns are the images of the new basis vectors
  SuperAlgebra<F> target;
  IsoWitness<F> witness;  // input witness with the full generator images filled in
};

// Builds the full transition matrix by bracketing from the two generator
// images, then rewrites the structure constants in the new basis.
template <class F>
BasisChange<F> materialize_basis_change(const SuperAlgebra<F>& alg, const IsoWitness<F>& w) {
  const auto& f = alg.field();
  const int n = static_cast<int>(alg.even_dim());
  const int m = static_cast<int>(alg.odd_dim());
  const int expected_m = w.family == FamilyTag::A ? n + 1 : n + 2;
  if (w.n != n || m != expected_m)
    throw std::invalid_argument("materialize_basis_change: witness does not match the algebra");
  if (f.is_zero(w.a1) || f.is_zero(w.b_top))
    throw std::invalid_argument("materialize_basis_change: witness must have a1, b nonzero");
  const size_t d = alg.dim();
  auto Y = [&](int j) { return static_cast<size_t>(n + j - 1); };

  std::vector<Vec<F>> new_x(static_cast<size_t>(n)), new_y(static_cast<size_t>(m));
  Vec<F> y1(d, f.zero());
  y1[Y(1)] = w.a1;
  y1[Y(m)] = w.a_top;
  Vec<F> ym(d, f.zero());
  if (w.family == FamilyTag::A) {
    // The next-to-top coefficient is forced: b_n = -a_{n+1} b_{n+1} gamma / a1.
    const auto gamma = alg.c(Y(m), Y(m), static_cast<size_t>(n - 1));
    ym[Y(m - 1)] = -(w.a_top * w.b_top * gamma) / w.a1;
  } else {
    ym[Y(m - 1)] = w.b_prev;
  }
  ym[Y(m)] = w.b_top;
  new_y[0] = y1;
  new_y[static_cast<size_t>(m - 1)] = ym;

  new_x[0] = alg.bracket(y1, y1);
  for (int t = 1; t <= n - 1; ++t) new_x[static_cast<size_t>(t)] = alg.bracket(new_x[t - 1], new_x[0]);
  for (int t = 2; t <= m - 1; ++t) new_y[static_cast<size_t>(t - 1)] = alg.bracket(new_y[t - 2], new_x[0]);

  Matrix<F> map(d, d, f);
  for (int i = 0; i < n; ++i)
    for (size_t r = 0; r < d; ++r) map.at(r, static_cast<size_t>(i)) = new_x[i][r];
  for (int j = 0; j < m; ++j)
    for (size_t r = 0; r < d; ++r) map.at(r, static_cast<size_t>(n + j)) = new_y[j][r];

  auto inv = inverse_equilibrated(map, f);
  if (!inv)
    throw std::invalid_argument("materialize_basis_change: witness produces a singular map (rank " +
                                std::to_string(rank(map, f)) + ")");
  SuperAlgebra<F> target(alg.basis(), f);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const auto w_ij = alg.bracket(map.col(i), map.col(j));
      const auto coords = matvec(*inv, w_ij, f);
      for (size_t k = 0; k < d; ++k)
        if (!f.is_zero(coords[k])) target.set_c(i, j, k, coords[k]);
    }
  // Full generator images over the odd basis, with the rank-2 condition on
  // the coefficient rows validated rather than assumed.
  IsoWitness<F> enriched = w;
  enriched.a_vec.clear();
  enriched.b_vec.clear();
  Matrix<F> gen_rows(2, static_cast<size_t>(m), f);
  for (int j = 1; j <= m; ++j) {
    enriched.a_vec.push_back(y1[Y(j)]);
    enriched.b_vec.push_back(ym[Y(j)]);
    gen_rows.at(0, static_cast<size_t>(j - 1)) = y1[Y(j)];
    gen_rows.at(1, static_cast<size_t>(j - 1)) = ym[Y(j)];
  }
  if (rank(gen_rows, f) != 2)
    throw std::invalid_argument("materialize_basis_change: generator rows are not independent");
  return BasisChange<F>{std::move(map), std::move(target), std::move(enriched)};
}

// Checks f([x,y]) = [f(x), f(y)] on all basis pairs for the linear map given
// by `map` (columns = images), from src to dst.  Parity mixing and singular
// maps are rejected up front.
template <class F>
IdentityReport<F> verify_isomorphism(const SuperAlgebra<F>& src, const SuperAlgebra<F>& dst,
                                     const Matrix<F>& map) {
  const auto& f = src.field();
  const size_t d = src.dim();
  if (dst.dim() != d || map.rows != d || map.cols != d)
    throw std::invalid_argument("verify_isomorphism: dimension mismatch");
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (!f.is_zero(map.at(i, j)) && dst.parity(i) != src.parity(j))
        throw std::invalid_argument("verify_isomorphism: map does not preserve the grading");
  if (!inverse_equilibrated(map, f))
    throw std::invalid_argument("verify_isomorphism: map is not invertible");

  IdentityReport<F> rep;
  [[maybe_unused]] std::vector<double> colnorm;
  [[maybe_unused]] double dst_cmax = 0;
  if constexpr (!F::is_exact) {
    colnorm.assign(d, 0.0);
    for (size_t j = 0; j < d; ++j)
      for (size_t i = 0; i < d; ++i)
        colnorm[j] = std::max(colnorm[j], f.abs_approx(map.at(i, j)));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k)
          dst_cmax = std::max(dst_cmax, f.abs_approx(dst.c(i, j, k)));
  }
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      auto lhs = matvec(map, src.bracket_basis(i, j), f);
      const auto rhs = dst.bracket(map.col(i), map.col(j));
      bool ok = true;
      if constexpr (F::is_exact) {
        for (size_t k = 0; k < d; ++k)
          if (!f.eq(lhs[k], rhs[k])) {
            ok = false;
            break;
          }
      } else {
        // Backward-error criterion: products of large column entries cancel
        // to mathematical zeros, so residuals are judged against the scale
        // of the terms entering the pair's computation, not the result.
        double src_cij = 0;
        for (size_t k = 0; k < d; ++k)
          src_cij = std::max(src_cij, f.abs_approx(src.c(i, j, k)));
        const double map_max = *std::max_element(colnorm.begin(), colnorm.end());
        const double scale =
            colnorm[i] * colnorm[j] * std::max(1.0, dst_cmax) + src_cij * map_max;
        for (size_t k = 0; k < d; ++k)
          if (f.abs_approx(lhs[k] - rhs[k]) > f.tol * (1.0 + scale)) {
            ok = false;
            break;
          }
      }
      if (!ok) {
        Vec<F> residual(d, f.zero());
        for (size_t k = 0; k < d; ++k) residual[k] = lhs[k] - rhs[k];
        rep.violations.push_back({i, j, 0, std::move(residual)});
      }
    }
  rep.pass = rep.violations.empty();
  return rep;
}

template <class F>
bool algebras_equal(const SuperAlgebra<F>& a, const SuperAlgebra<F>& b) {
  if (a.dim() != b.dim()) return false;
  const auto& f = a.field();
  for (size_t i = 0; i < a.dim(); ++i)
    for (size_t j = 0; j < a.dim(); ++j)
      for (size_t k = 0; k < a.dim(); ++k)
        if (!f.eq(a.c(i, j, k), b.c(i, j, k))) return false;
  return true;
}

struct SeparationVerdict {
  std::vector<std::string> distinguished_by;
  bool distinguished() const { return !distinguished_by.empty(); }
};

// Cheap negative certificates: mismatched invariants rule out isomorphism
// before any condition solving.
template <class F>
SeparationVerdict invariant_separation(const SuperAlgebra<F>& a, const SuperAlgebra<F>& b,
                                       size_t samples = 8, uint64_t seed = 0) {
  SeparationVerdict v;
  if (a.even_dim() != b.even_dim() || a.odd_dim() != b.odd_dim()) {
    v.distinguished_by.push_back("graded dimensions (" + std::to_string(a.even_dim()) + "|" +
                                 std::to_string(a.odd_dim()) + ") vs (" +
                                 std::to_string(b.even_dim()) + "|" +
                                 std::to_string(b.odd_dim()) + ")");
    return v;
  }
  const auto sa = central_series(a, a.dim() + 2);
  const auto sb = central_series(b, b.dim() + 2);
  if (sa.nilindex != sb.nilindex) v.distinguished_by.push_back("nilindex");
  if (sa.dims != sb.dims) v.distinguished_by.push_back("central series dimensions");
  if (right_annihilator(a).basis.size() != right_annihilator(b).basis.size())
    v.distinguished_by.push_back("right annihilator dimension");
  const auto ga = generator_info(a), gb = generator_info(b);
  if (ga.count != gb.count || ga.parities != gb.parities)
    v.distinguished_by.push_back("generator count or parities");
  if constexpr (F::is_exact) {
    if (sa.nilindex && sb.nilindex) {
      const auto ca = characteristic_sequence(a, samples, seed);
      const auto cb = characteristic_sequence(b, samples, seed);
      if (ca.even != cb.even || ca.odd != cb.odd)
        v.distinguished_by.push_back("characteristic sequence");
    }
  }
  return v;
}

}  // namespace leibniz
