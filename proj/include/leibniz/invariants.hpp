#pragma once

// Invariants used by the classification: descending central series and
// nilindex, right annihilator, right-multiplication operators with their
// Jordan profiles, the characteristic sequence, generator data, and closure
// of the right-multiplication image under the graded operator bracket.

#include "leibniz/rng.hpp"
#include "leibniz/superalgebra.hpp"

#include <optional>

namespace leibniz {

enum class SeriesStatus { nilpotent, stabilized_nonzero, cutoff_reached };

template <class F>
struct CentralSeries {
  std::vector<std::vector<Vec<F>>> bases;  // bases[k] spans L^{k+1}
  std::vector<size_t> dims;                // dims[k] = dim L^{k+1}
  std::optional<size_t> nilindex;          // least s with L^s = 0
  SeriesStatus status = SeriesStatus::nilpotent;
};

// L^1 = L, L^{k+1} = [L^k, L^1].
template <class F>
CentralSeries<F> central_series(const SuperAlgebra<F>& alg, size_t cutoff) {
  const auto& f = alg.field();
  CentralSeries<F> out;
  std::vector<Vec<F>> current;
  for (size_t i = 0; i < alg.dim(); ++i) current.push_back(alg.basis_vector(i));
  out.bases.push_back(current);
  out.dims.push_back(alg.dim());
  for (size_t k = 1; k <= cutoff; ++k) {
    RowSpace<F> next(alg.dim(), f);
    for (const auto& u : current)
      for (size_t j = 0; j < alg.dim(); ++j) next.add(alg.bracket(u, alg.basis_vector(j)));
    current = next.basis();
    out.bases.push_back(current);
    out.dims.push_back(current.size());
    if (current.empty()) {
      out.nilindex = k + 1;
      out.status = SeriesStatus::nilpotent;
      return out;
    }
    if (out.dims[k] == out.dims[k - 1]) {
      out.status = SeriesStatus::stabilized_nonzero;
      return out;
    }
  }
  out.status = SeriesStatus::cutoff_reached;
  return out;
}

template <class F>
bool is_nilpotent(const SuperAlgebra<F>& alg) {
  return central_series(alg, alg.dim() + 2).nilindex.has_value();
}

template <class F>
struct RightAnnihilator {
  std::vector<Vec<F>> basis;
  // Whether all [a,b] + (-1)^{ab}[b,a] landed inside, as they must for a
  // Leibniz superalgebra.
  bool symmetric_brackets_contained = true;
};

// {z : [L, z] = 0}, solved as a linear system over the basis.
template <class F>
RightAnnihilator<F> right_annihilator(const SuperAlgebra<F>& alg) {
  const auto& f = alg.field();
  const size_t d = alg.dim();
  Matrix<F> sys(d * d, d, f);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k) sys.at(i * d + k, j) = alg.c(i, j, k);
  RightAnnihilator<F> out;
  out.basis = nullspace(sys, f);

  RowSpace<F> span(d, f);
  for (const auto& z : out.basis) span.add(z);
  for (size_t a = 0; a < d && out.symmetric_brackets_contained; ++a)
    for (size_t b = 0; b < d; ++b) {
      auto v = alg.bracket_basis(a, b);
      const auto sign = both_odd(alg.parity(a), alg.parity(b)) ? -f.one() : f.one();
      const auto w = alg.bracket_basis(b, a);
      for (size_t k = 0; k < d; ++k) v[k] += sign * w[k];
      if (!span.contains(v)) {
        out.symmetric_brackets_contained = false;
        break;
      }
    }
  return out;
}

enum class GradedPart { even, odd, both };

// Matrix of v -> [v, x] on the requested graded part, in basis order.
template <class F>
Matrix<F> right_mult_matrix(const SuperAlgebra<F>& alg, const Vec<F>& x, GradedPart part) {
  const auto& f = alg.field();
  const size_t d = alg.dim();
  if (x.size() != d) throw std::invalid_argument("right_mult_matrix: dimension mismatch");
  std::vector<size_t> idx;
  for (size_t i = 0; i < d; ++i) {
    if (part == GradedPart::both || (part == GradedPart::even && alg.parity(i) == Parity::even) ||
        (part == GradedPart::odd && alg.parity(i) == Parity::odd))
      idx.push_back(i);
  }
  if (idx.empty()) throw std::invalid_argument("right_mult_matrix: requested part is empty");
  Matrix<F> m(idx.size(), idx.size(), f);
  for (size_t col = 0; col < idx.size(); ++col) {
    const auto image = alg.bracket(alg.basis_vector(idx[col]), x);
    for (size_t row = 0; row < idx.size(); ++row) m.at(row, col) = image[idx[row]];
  }
  return m;
}

struct JordanProfile {
  std::vector<size_t> blocks;  // descending

  bool operator==(const JordanProfile&) const = default;
  // Lexicographic; used for the characteristic-sequence maxima.
  bool operator<(const JordanProfile& o) const { return blocks < o.blocks; }
};

// Block sizes of a nilpotent matrix from its rank sequence:
// #blocks of size >= k equals rank(M^{k-1}) - rank(M^k).
template <class F>
JordanProfile jordan_profile(const Matrix<F>& m, const F& f) {
  if constexpr (!F::is_exact)
    throw std::domain_error("jordan_profile requires an exact scalar backend");
  if (m.rows != m.cols) throw std::invalid_argument("jordan_profile: matrix not square");
  const size_t d = m.rows;
  std::vector<size_t> ranks{d};
  Matrix<F> power = m;
  for (size_t k = 1; k <= d; ++k) {
    const size_t r = rank(power, f);
    ranks.push_back(r);
    if (r == 0) break;
    power = matmul(power, m, f);
  }
  if (ranks.back() != 0) throw std::domain_error("jordan_profile: matrix is not nilpotent");
  JordanProfile out;
  for (size_t k = 1; k + 1 <= ranks.size(); ++k) {
    const size_t ge_k = ranks[k - 1] - ranks[k];
    const size_t ge_k1 = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (size_t c = ge_k1; c < ge_k; ++c) out.blocks.push_back(k);
  }
  std::sort(out.blocks.rbegin(), out.blocks.rend());
  size_t total = 0;
  for (size_t b : out.blocks) total += b;
  if (total != d) throw std::logic_error("jordan_profile: block sizes do not sum to dimension");
  return out;
}

template <class F>
struct CharSequence {
  std::vector<size_t> even, odd;  // independent maxima (the definition)
  Vec<F> witness_even, witness_odd;
  // Maximum of the pair (C0, C1) at a single element, compared
  // lexicographically on the concatenation.
  std::vector<size_t> joint_even, joint_odd;
  Vec<F> witness_joint;
  bool readings_agree = true;
};

// Lexicographic maxima of the Jordan profiles of R_x on the even and odd
// parts, over even elements outside [L0, L0].  Candidates are the even basis
// vectors outside the derived even subalgebra plus seeded random even
// combinations; deterministic for a fixed seed.
template <class F>
CharSequence<F> characteristic_sequence(const SuperAlgebra<F>& alg, size_t samples,
                                        uint64_t seed) {
  const auto& f = alg.field();
  const size_t d = alg.dim();

  RowSpace<F> even_derived(d, f);
  for (size_t i = 0; i < d; ++i) {
    if (alg.parity(i) != Parity::even) continue;
    for (size_t j = 0; j < d; ++j) {
      if (alg.parity(j) != Parity::even) continue;
      even_derived.add(alg.bracket_basis(i, j));
    }
  }

  std::vector<Vec<F>> candidates;
  std::vector<size_t> even_idx;
  for (size_t i = 0; i < d; ++i)
    if (alg.parity(i) == Parity::even) even_idx.push_back(i);
  for (size_t i : even_idx) {
    auto v = alg.basis_vector(i);
    if (!even_derived.contains(v)) candidates.push_back(std::move(v));
  }
  SeededRng rng(seed);
  size_t attempts = 0;
  while (candidates.size() < samples + even_idx.size() && attempts < 20 * (samples + 1)) {
    ++attempts;
    Vec<F> v(d, f.zero());
    for (size_t i : even_idx) v[i] = f.from_rational(rng.rational());
    if (!even_derived.contains(v)) candidates.push_back(std::move(v));
    if (candidates.size() >= samples + 1 && attempts >= samples) break;
  }
  if (candidates.empty())
    throw std::domain_error(
        "characteristic_sequence: no even element outside [L0, L0] (no even generators)");

  CharSequence<F> out;
  bool first = true;
  std::vector<size_t> best_joint_key;
  for (const auto& x : candidates) {
    const auto c0 = jordan_profile(right_mult_matrix(alg, x, GradedPart::even), f);
    const auto c1 = jordan_profile(right_mult_matrix(alg, x, GradedPart::odd), f);
    if (first || out.even < c0.blocks) {
      out.even = c0.blocks;
      out.witness_even = x;
    }
    if (first || out.odd < c1.blocks) {
      out.odd = c1.blocks;
      out.witness_odd = x;
    }
    std::vector<size_t> joint_key = c0.blocks;
    joint_key.push_back(0);  // separator: even profile compares first
    for (size_t b : c1.blocks) joint_key.push_back(b);
    if (first || best_joint_key < joint_key) {
      best_joint_key = joint_key;
      out.joint_even = c0.blocks;
      out.joint_odd = c1.blocks;
      out.witness_joint = x;
    }
    first = false;
  }
  out.readings_agree = (out.even == out.joint_even && out.odd == out.joint_odd);
  return out;
}

struct GeneratorInfo {
  size_t count = 0;
  std::vector<Parity> parities;  // even entries first
};

// dim(L / L^2) and the parities read off a graded complement of L^2.
template <class F>
GeneratorInfo generator_info(const SuperAlgebra<F>& alg) {
  const auto& f = alg.field();
  RowSpace<F> l2(alg.dim(), f);
  for (size_t i = 0; i < alg.dim(); ++i)
    for (size_t j = 0; j < alg.dim(); ++j) l2.add(alg.bracket_basis(i, j));
  std::vector<bool> pivot(alg.dim(), false);
  for (size_t p : l2.pivots()) pivot[p] = true;
  GeneratorInfo out;
  out.count = alg.dim() - l2.dim();
  for (size_t i = 0; i < alg.dim(); ++i)
    if (!pivot[i] && alg.parity(i) == Parity::even) out.parities.push_back(Parity::even);
  for (size_t i = 0; i < alg.dim(); ++i)
    if (!pivot[i] && alg.parity(i) == Parity::odd) out.parities.push_back(Parity::odd);
  return out;
}

template <class F>
struct ClosureDetail {
  size_t i = 0, j = 0;
  Vec<F> coords;   // coordinates of <R_i, R_j> in span{R_x}, when solvable
  int sign = 0;    // +1 / -1 when <R_i,R_j> = (sign) R_{[b_i,b_j]}, 0 if both zero,
                   // 2 when in the span but matching neither sign
};

// Verifies that <R_a, R_b> = R_a R_b - (-1)^{ab} R_b R_a stays inside
// span{R_x : x in L} for all homogeneous basis pairs, and records whether it
// equals +/- R_{[a,b]}.
template <class F>
IdentityReport<F> right_mult_superalgebra_closure(const SuperAlgebra<F>& alg,
                                                  std::vector<ClosureDetail<F>>* details = nullptr) {
  const auto& f = alg.field();
  const size_t d = alg.dim();
  std::vector<Matrix<F>> r_ops;
  for (size_t i = 0; i < d; ++i)
    r_ops.push_back(right_mult_matrix(alg, alg.basis_vector(i), GradedPart::both));

  // Flattened operators, augmented with coordinates for the solve.
  RowSpace<F> span(d * d + d, f);
  for (size_t i = 0; i < d; ++i) {
    Vec<F> row(d * d + d, f.zero());
    for (size_t p = 0; p < d * d; ++p) row[p] = r_ops[i].a[p];
    row[d * d + i] = f.one();
    span.add(std::move(row));
  }

  IdentityReport<F> rep;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      const auto sign = both_odd(alg.parity(i), alg.parity(j)) ? -f.one() : f.one();
      Matrix<F> g(d, d, f);
      const auto xy = matmul(r_ops[i], r_ops[j], f);
      const auto yx = matmul(r_ops[j], r_ops[i], f);
      for (size_t p = 0; p < d * d; ++p) g.a[p] = xy.a[p] - sign * yx.a[p];

      Vec<F> probe(d * d + d, f.zero());
      for (size_t p = 0; p < d * d; ++p) probe[p] = g.a[p];
      auto residue = span.reduce(probe);
      bool inside = true;
      for (size_t p = 0; p < d * d; ++p)
        if (!f.is_zero(residue[p])) {
          inside = false;
          break;
        }
      if (!inside) {
        rep.violations.push_back({i, j, 0, {}});
        continue;
      }
      if (details) {
        ClosureDetail<F> det;
        det.i = i;
        det.j = j;
        det.coords.assign(d, f.zero());
        for (size_t t = 0; t < d; ++t) det.coords[t] = -residue[d * d + t];
        // Compare against R_{[b_i,b_j]} = sum_k c(i,j,k) R_k.
        bool plus = true, minus = true, g_zero = true, r_zero = true;
        for (size_t p = 0; p < d * d && (plus || minus); ++p) {
          typename F::Elem rb = f.zero();
          const size_t row = p / d, col = p % d;
          for (size_t k = 0; k < d; ++k) {
            const auto& s = alg.c(i, j, k);
            if (!f.is_zero(s)) rb += s * r_ops[k].at(row, col);
          }
          if (!f.is_zero(g.a[p])) g_zero = false;
          if (!f.is_zero(rb)) r_zero = false;
          if (!f.eq(g.a[p], rb)) plus = false;
          if (!f.eq(g.a[p], -rb)) minus = false;
        }
        if (g_zero && r_zero)
          det.sign = 0;
        else if (plus)
          det.sign = 1;
        else if (minus)
          det.sign = -1;
        else
          det.sign = 2;
        details->push_back(std::move(det));
      }
    }
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace leibniz
