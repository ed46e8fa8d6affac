#pragma once

// Dense exact linear algebra over a scalar field backend: matrices, reduced
// row echelon form, rank (fraction-free over the rationals), null spaces,
// inverses, and incremental row spaces for subspace bookkeeping.

#include "leibniz/fields.hpp"

#include <optional>
#include <vector>

namespace leibniz {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
bool vec_is_zero(const Vec<F>& v, const F& f) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
Vec<F> vec_zero(size_t n, const F& f) {
  return Vec<F>(n, f.zero());
}

template <class F>
void vec_add_scaled(Vec<F>& dst, const typename F::Elem& s, const Vec<F>& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] += s * src[i];
}

template <class F>
struct Matrix {
  using Elem = typename F::Elem;
  size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(size_t r, size_t c, const F& f) : rows(r), cols(c), a(r * c, f.zero()) {}

  static Matrix identity(size_t n, const F& f) {
    Matrix m(n, n, f);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }
  static Matrix from_rows(const std::vector<Vec<F>>& rows_in, const F& f) {
    Matrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in[0].size(), f);
    for (size_t i = 0; i < rows_in.size(); ++i)
      for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows_in[i][j];
    return m;
  }

  Elem& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Elem& at(size_t i, size_t j) const { return a[i * cols + j]; }

  Vec<F> row(size_t i) const {
    return Vec<F>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
  }
  Vec<F> col(size_t j) const {
    Vec<F> out;
    out.reserve(rows);
    for (size_t i = 0; i < rows; ++i) out.push_back(at(i, j));
    return out;
  }
};

template <class F>
Matrix<F> matmul(const Matrix<F>& x, const Matrix<F>& y, const F& f) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  Matrix<F> out(x.rows, y.cols, f);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const auto& v = x.at(i, k);
      if (f.definitely_zero(v)) continue;
      for (size_t j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
    }
  return out;
}

// Column-vector action M*v.
template <class F>
Vec<F> matvec(const Matrix<F>& m, const Vec<F>& v, const F& f) {
  if (m.cols != v.size()) throw std::invalid_argument("matvec: shape mismatch");
  Vec<F> out(m.rows, f.zero());
  for (size_t j = 0; j < v.size(); ++j) {
    if (f.definitely_zero(v[j])) continue;
    for (size_t i = 0; i < m.rows; ++i) out[i] += m.at(i, j) * v[j];
  }
  return out;
}

template <class F>
struct RrefResult {
  Matrix<F> m;
  std::vector<size_t> pivot_cols;
  size_t rank = 0;
};

// Gauss-Jordan with exact division; on floating backends pivots are chosen by
// maximal modulus.
template <class F>
RrefResult<F> rref(Matrix<F> m, const F& f) {
  RrefResult<F> res;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t pivot = m.rows;
    if constexpr (F::is_exact) {
      for (size_t i = r; i < m.rows; ++i)
        if (!f.is_zero(m.at(i, c))) {
          pivot = i;
          break;
        }
    } else {
      double best = 0;
      for (size_t i = r; i < m.rows; ++i) {
        const double mag = f.abs_approx(m.at(i, c));
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
      if (pivot != m.rows && f.is_zero(m.at(pivot, c))) pivot = m.rows;
    }
    if (pivot == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    const auto inv_lead = f.one() / m.at(r, c);
    for (size_t j = c; j < m.cols; ++j) m.at(r, j) *= inv_lead;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      const auto factor = m.at(i, c);
      for (size_t j = c; j < m.cols; ++j) m.at(i, j) -= factor * m.at(r, j);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.m = std::move(m);
  return res;
}

namespace detail {

// Fraction-free Bareiss rank on an integer matrix.
inline size_t bareiss_rank_int(std::vector<Int> m, size_t rows, size_t cols) {
  auto at = [&](size_t i, size_t j) -> Int& { return m[i * cols + j]; };
  Int prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = rows;
    for (size_t i = r; i < rows; ++i)
      if (at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != r)
      for (size_t j = 0; j < cols; ++j) std::swap(at(r, j), at(pivot, j));
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        at(i, j) = (at(i, j) * at(r, c) - at(i, c) * at(r, j)) / prev;
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

}  // namespace detail

template <class F>
size_t rank(const Matrix<F>& m, const F& f) {
  return rref(m, f).rank;
}

// Rational matrices get the fraction-free path: rows are scaled to integers
// and eliminated Bareiss-style, which keeps intermediate entries at the size
// of minors instead of compounding gcd-normalized fractions.
inline size_t rank(const Matrix<RationalField>& m, const RationalField&) {
  std::vector<Int> ints(m.rows * m.cols);
  for (size_t i = 0; i < m.rows; ++i) {
    Int l = 1;
    for (size_t j = 0; j < m.cols; ++j) {
      const Int den = boost::multiprecision::denominator(m.at(i, j));
      l = boost::multiprecision::lcm(l, den);
    }
    for (size_t j = 0; j < m.cols; ++j) {
      const Rational scaled = m.at(i, j) * Rational(l);
      ints[i * m.cols + j] = Int(boost::multiprecision::numerator(scaled));
    }
  }
  return detail::bareiss_rank_int(std::move(ints), m.rows, m.cols);
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m, const F& f) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: matrix not square");
  Matrix<F> aug(m.rows, 2 * m.cols, f);
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = f.one();
  }
  auto res = rref(std::move(aug), f);
  if (res.rank != m.rows) return std::nullopt;
  for (size_t r = 0; r < res.pivot_cols.size(); ++r)
    if (res.pivot_cols[r] != r) return std::nullopt;  // pivot escaped the left block
  Matrix<F> inv(m.rows, m.cols, f);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) inv.at(i, j) = res.m.at(i, m.cols + j);
  return inv;
}

// Inverse with column equilibration for the floating backend: basis-change
// matrices carry power scalings across many orders of magnitude, and scaling
// each column to unit max modulus keeps the elimination well conditioned.
// (M = S D with D diagonal, so M^{-1} = D^{-1} S^{-1}.)
template <class F>
std::optional<Matrix<F>> inverse_equilibrated(const Matrix<F>& m, const F& f) {
  if constexpr (F::is_exact) {
    return inverse(m, f);
  } else {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: matrix not square");
    std::vector<double> scale(m.cols, 0.0);
    for (size_t j = 0; j < m.cols; ++j) {
      for (size_t i = 0; i < m.rows; ++i)
        scale[j] = std::max(scale[j], f.abs_approx(m.at(i, j)));
      if (scale[j] == 0.0) return std::nullopt;
    }
    Matrix<F> s = m;
    for (size_t j = 0; j < m.cols; ++j)
      for (size_t i = 0; i < m.rows; ++i)
        s.at(i, j) = s.at(i, j) * (f.one() / typename F::Elem(scale[j]));
    auto inv = inverse(s, f);
    if (!inv) return std::nullopt;
    for (size_t i = 0; i < m.rows; ++i)
      for (size_t j = 0; j < m.cols; ++j)
        inv->at(i, j) = inv->at(i, j) * (f.one() / typename F::Elem(scale[i]));
    return inv;
  }
}

// Basis (as rows) of {x : M x = 0}.
template <class F>
std::vector<Vec<F>> nullspace(const Matrix<F>& m, const F& f) {
  auto res = rref(m, f);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : res.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<F>> basis;
  for (size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec<F> v(m.cols, f.zero());
    v[free_col] = f.one();
    for (size_t r = 0; r < res.pivot_cols.size(); ++r)
      v[res.pivot_cols[r]] = -res.m.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incrementally maintained reduced row echelon span.
template <class F>
class RowSpace {
 public:
  explicit RowSpace(size_t ambient, const F& f) : ambient_(ambient), f_(&f) {}

  size_t dim() const { return rows_.size(); }
  size_t ambient_dim() const { return ambient_; }
  const std::vector<Vec<F>>& basis() const { return rows_; }

  // Reduces v against the basis; returns the residue.
  Vec<F> reduce(Vec<F> v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const auto& x = v[pivots_[r]];
      if (!f_->is_zero(x)) {
        const auto factor = x;
        for (size_t j = 0; j < ambient_; ++j) v[j] -= factor * rows_[r][j];
      }
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return vec_is_zero(reduce(v), *f_); }

  // Returns true if the span grew.
  bool add(Vec<F> v) {
    v = reduce(std::move(v));
    size_t pivot = ambient_;
    if constexpr (F::is_exact) {
      for (size_t j = 0; j < ambient_; ++j)
        if (!f_->is_zero(v[j])) {
          pivot = j;
          break;
        }
    } else {
      // Normalize by the largest entry first so the pivot test is scale-free.
      double best = 0;
      size_t best_j = ambient_;
      for (size_t j = 0; j < ambient_; ++j) {
        const double mag = f_->abs_approx(v[j]);
        if (mag > best) {
          best = mag;
          best_j = j;
        }
      }
      if (best_j != ambient_ && !f_->is_zero(v[best_j])) {
        const auto inv = f_->one() / v[best_j];
        for (auto& x : v) x *= inv;
        for (size_t j = 0; j < ambient_; ++j)
          if (!f_->is_zero(v[j])) {
            pivot = j;
            break;
          }
      }
    }
    if (pivot == ambient_) return false;
    const auto inv_lead = f_->one() / v[pivot];
    for (auto& x : v) x *= inv_lead;
    for (size_t r = 0; r < rows_.size(); ++r) {
      const auto& x = rows_[r][pivot];
      if (!f_->is_zero(x)) {
        const auto factor = x;
        for (size_t j = 0; j < ambient_; ++j) rows_[r][j] -= factor * v[j];
      }
    }
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, pivot);
    return true;
  }

  const std::vector<size_t>& pivots() const { return pivots_; }

 private:
  size_t ambient_;
  const F* f_;
  std::vector<Vec<F>> rows_;
  std::vector<size_t> pivots_;
};

}  // namespace leibniz
