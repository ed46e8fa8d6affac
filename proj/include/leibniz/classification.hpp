#pragma once

// Canonical forms.  The parameter space of each family is partitioned into
// descriptor groups following the case split of the classification: gamma is
// normalized to 1 when nonzero, the trailing beta is absorbed where the
// group action allows it, and the surviving entries are scaled so their
// first (and where possible second) nonzero coordinate becomes 1.  The
// residual freedom is a finite set of root-of-unity branches; the
// canonicalizer enumerates all of them and picks the representative whose
// entries are lexicographically minimal under (principal argument, modulus),
// so orbit-equivalent inputs land on the same representative.  Every result
// ships a witness that is re-verified through the basis-change machinery.

#include "leibniz/isomorphism.hpp"

#include <map>

namespace leibniz {

struct RootOfUnity {
  long index = 0;  // m
  long order = 1;  // t

  template <class F>
  typename F::Elem value(const F& f) const {
    auto v = f.root_of_unity(index, order);
    if (!v)
      throw std::domain_error("root of unity of order " + std::to_string(order) +
                              " is not representable in the " + f.name() +
                              " backend; use complex or a cyclotomic conductor divisible by " +
                              std::to_string(order));
    return *v;
  }
};

struct CanonicalDescriptor {
  struct Entry {
    bool fixed = true;
    Rational value;  // meaningful when fixed
  };

  FamilyTag family = FamilyTag::A;
  int n = 0;
  std::string case_label;  // "1.1","1.2","2.1","2.2.1","2.2.2" / "1","2","0" / "B.1","B.0"
  int j = 0;               // leading-one position inside the normalized block (0 = none)
  int s = 0;               // shift of the second one (0 = none)
  std::vector<Entry> pattern;  // over the flat parameter layout
  long ambiguity_order = 1;    // size of the residual branch group
  std::string constraint_note;

  std::string id() const {
    return family_name(family) + ":n=" + std::to_string(n) + ":case=" + case_label +
           ":j=" + std::to_string(j) + ":s=" + std::to_string(s);
  }
  std::vector<size_t> free_positions() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < pattern.size(); ++i)
      if (!pattern[i].fixed) out.push_back(i);
    return out;
  }
};

namespace detail {

// Two-ones normalization pattern over a block of length `len` starting at
// flat offset `off`: zeros before j, one at j, zeros up to j+s, one at j+s
// (when s is interior), free afterwards.  s = len+1-j encodes "nothing after".
inline void fill_two_ones(std::vector<CanonicalDescriptor::Entry>& pat, size_t off, int len,
                          int j, int s) {
  for (int p = 1; p <= len; ++p) {
    auto& e = pat[off + static_cast<size_t>(p - 1)];
    if (p < j) {
      e = {true, Rational(0)};
    } else if (p == j) {
      e = {true, Rational(1)};
    } else if (s == len + 1 - j) {
      e = {true, Rational(0)};
    } else if (p < j + s) {
      e = {true, Rational(0)};
    } else if (p == j + s) {
      e = {true, Rational(1)};
    } else {
      e = {false, Rational(0)};
    }
  }
}

// One-one pattern: zeros before j, one at j, free afterwards; j = len+1
// encodes the all-zero block.
inline void fill_one_one(std::vector<CanonicalDescriptor::Entry>& pat, size_t off, int len,
                         int j) {
  for (int p = 1; p <= len; ++p) {
    auto& e = pat[off + static_cast<size_t>(p - 1)];
    if (p < j || j == len + 1)
      e = {true, Rational(0)};
    else if (p == j)
      e = {true, Rational(1)};
    else
      e = {false, Rational(0)};
  }
}

}  // namespace detail

inline CanonicalDescriptor make_descriptor(FamilyTag family, int n, const std::string& label,
                                           int j, int s) {
  CanonicalDescriptor d;
  d.family = family;
  d.n = n;
  d.case_label = label;
  d.j = j;
  d.s = s;
  if (family == FamilyTag::A) {
    const bool odd = n % 2 == 1;
    const int q = odd ? (n + 1) / 2 : n / 2;
    const size_t len = FamilyAParams<RationalField>::beta_count(n) + 2;
    d.pattern.assign(len, {true, Rational(0)});
    if (odd) {
      const int tail_len = q - 2;     // beta_{q+2}..beta_n at flat 2..q-1
      const int ext_len = q - 1;      // tail plus the trailing beta at flat q
      if (label == "1.1") {
        d.pattern[0] = {true, Rational(1)};
        d.pattern[1] = {false, Rational(0)};
        detail::fill_one_one(d.pattern, 2, tail_len, j == q - 1 ? tail_len + 1 : j);
        d.pattern[len - 1] = {true, Rational(0)};
        d.ambiguity_order = j <= tail_len ? 2L * j : 2L;
        d.constraint_note = "first free slot must differ from +/-1/2";
      } else if (label == "1.2") {
        d.pattern[0] = {true, Rational(1)};
        d.pattern[1] = {true, Rational(1, 2)};
        detail::fill_one_one(d.pattern, 2, ext_len, j == q ? ext_len + 1 : j);
        d.ambiguity_order = j <= ext_len ? 2L * j : 2L;
      } else if (label == "2.1") {
        d.pattern[0] = {true, Rational(0)};
        d.pattern[1] = {true, Rational(1)};
        detail::fill_one_one(d.pattern, 2, tail_len, j == q - 1 ? tail_len + 1 : j);
        d.pattern[len - 1] = {true, Rational(0)};
        d.ambiguity_order = j <= tail_len ? j : 1L;
      } else if (label == "2.2.1") {
        d.pattern[0] = {true, Rational(0)};
        d.pattern[1] = {true, Rational(0)};
        detail::fill_two_ones(d.pattern, 2, ext_len, j, s);
        d.ambiguity_order = s <= ext_len - j ? s : 1L;
      } else if (label == "2.2.2") {
        // all zero
      } else {
        throw std::invalid_argument("unknown odd-n descriptor label " + label);
      }
    } else {
      const int tail_len = q - 1;  // beta_{q+2}..beta_n at flat 1..q-1
      const int ext_len = q;       // tail plus the trailing beta at flat q
      if (label == "1") {
        d.pattern[0] = {true, Rational(1)};
        detail::fill_one_one(d.pattern, 1, tail_len, j == q ? tail_len + 1 : j);
        d.pattern[len - 1] = {true, Rational(0)};
        d.ambiguity_order = j <= tail_len ? 2L * j - 1 : 1L;
      } else if (label == "2") {
        d.pattern[0] = {true, Rational(0)};
        detail::fill_two_ones(d.pattern, 1, ext_len, j, s);
        d.ambiguity_order = s <= ext_len - j ? s : 1L;
      } else if (label == "0") {
        // all zero
      } else {
        throw std::invalid_argument("unknown even-n descriptor label " + label);
      }
    }
  } else {
    const int len = static_cast<int>(FamilyBParams<RationalField>::beta_count(n));
    d.pattern.assign(static_cast<size_t>(len), {true, Rational(0)});
    if (label == "B.1") {
      detail::fill_two_ones(d.pattern, 0, len, j, s);
      d.ambiguity_order = s <= len - j ? s : 1L;
    } else if (label == "B.0") {
      // all zero
    } else {
      throw std::invalid_argument("unknown family B descriptor label " + label);
    }
  }
  return d;
}

// The full descriptor list for one (family, n); descriptors sharing a case
// label form one group of the classification.
inline std::vector<CanonicalDescriptor> enumerate_descriptors(FamilyTag family, int n) {
  if (n < 3) throw std::invalid_argument("enumerate_descriptors: n below minimum");
  std::vector<CanonicalDescriptor> out;
  if (family == FamilyTag::A) {
    const bool odd = n % 2 == 1;
    const int q = odd ? (n + 1) / 2 : n / 2;
    if (odd) {
      for (int j = 1; j <= q - 1; ++j) out.push_back(make_descriptor(family, n, "1.1", j, 0));
      for (int j = 1; j <= q; ++j) out.push_back(make_descriptor(family, n, "1.2", j, 0));
      for (int j = 1; j <= q - 1; ++j) out.push_back(make_descriptor(family, n, "2.1", j, 0));
      for (int j = 1; j <= q - 1; ++j)
        for (int s = 1; s <= q - j; ++s) out.push_back(make_descriptor(family, n, "2.2.1", j, s));
      out.push_back(make_descriptor(family, n, "2.2.2", 0, 0));
    } else {
      for (int j = 1; j <= q; ++j) out.push_back(make_descriptor(family, n, "1", j, 0));
      for (int j = 1; j <= q; ++j)
        for (int s = 1; s <= q + 1 - j; ++s) out.push_back(make_descriptor(family, n, "2", j, s));
      out.push_back(make_descriptor(family, n, "0", 0, 0));
    }
  } else {
    const int len = static_cast<int>(FamilyBParams<RationalField>::beta_count(n));
    for (int j = 1; j <= len; ++j)
      for (int s = 1; s <= len + 1 - j; ++s) out.push_back(make_descriptor(family, n, "B.1", j, s));
    out.push_back(make_descriptor(family, n, "B.0", 0, 0));
  }
  return out;
}

// Smallest conductor whose cyclotomic field realizes every root-of-unity
// branch of the (family, n) descriptor list exactly.
inline unsigned minimal_conductor(FamilyTag family, int n) {
  long l = 1;
  for (const auto& d : enumerate_descriptors(family, n)) l = std::lcm(l, d.ambiguity_order);
  return static_cast<unsigned>(l);
}

template <class F>
std::vector<typename F::Elem> instantiate_descriptor(const CanonicalDescriptor& d,
                                                     const std::vector<typename F::Elem>& values,
                                                     const F& f) {
  const auto free_pos = d.free_positions();
  if (values.size() != free_pos.size())
    throw std::invalid_argument("instantiate_descriptor: expected " +
                                std::to_string(free_pos.size()) + " values");
  std::vector<typename F::Elem> out;
  out.reserve(d.pattern.size());
  for (const auto& e : d.pattern) out.push_back(f.from_rational(e.fixed ? e.value : Rational(0)));
  for (size_t t = 0; t < free_pos.size(); ++t) out[free_pos[t]] = values[t];
  return out;
}

// ---------------------------------------------------------------------------
// Normalization operators, as printed vector patterns.
// ---------------------------------------------------------------------------

// V^kind_{j,k}: zero vector when j = k+1, otherwise a leading 1 at position j
// with the later entries alpha_i scaled by root-of-unity powers
//   kind 1:  S_{m,j}^i
//   kind 0:  delta * (delta^i)^{1/j} * S_{m,j}^i
//   kind 2:  S_{m,2j+1}^{2i+1}
template <class F>
Vec<F> v_operator(int kind, int j, int k, const std::vector<typename F::Elem>& alpha, long m,
                  int delta, const F& f) {
  if (kind < 0 || kind > 2) throw std::invalid_argument("v_operator: kind must be 0, 1, or 2");
  if (j < 1 || j > k + 1) throw std::invalid_argument("v_operator: index j out of range");
  if (alpha.size() != static_cast<size_t>(k))
    throw std::invalid_argument("v_operator: alpha has wrong length");
  if (delta != 1 && delta != -1) throw std::invalid_argument("v_operator: delta must be +/-1");
  Vec<F> out(static_cast<size_t>(k), f.zero());
  if (j == k + 1) return out;
  out[static_cast<size_t>(j - 1)] = f.one();
  const long sub_order = kind == 2 ? 2L * j + 1 : j;
  for (int i = j + 1; i <= k; ++i) {
    const long exponent = kind == 2 ? 2L * i + 1 : i;
    auto factor = RootOfUnity{m * exponent, sub_order}.value(f);
    if (kind == 0) {
      const bool flip = (delta == -1) && (i % 2 == 1);  // delta^i = -1
      auto root = flip ? RootOfUnity{1, 2L * j}.value(f) : f.one();  // principal j-th root of -1
      factor = factor * f.from_int(delta) * root;
    }
    out[static_cast<size_t>(i - 1)] = factor * alpha[static_cast<size_t>(i - 1)];
  }
  return out;
}

// W_{s,k}: second normalization of a leading-1 vector.  For interior s the
// entry at position j+s is rescaled to 1 and the tail picks up the branch
// factors c^{p-j} with c^s = 1/v[j+s]; the boundary s = k+1-j leaves the
// vector unchanged.
template <class F>
Vec<F> w_operator(int s, int k, const Vec<F>& v, const F& f, long m = 0) {
  if (v.size() != static_cast<size_t>(k)) throw std::invalid_argument("w_operator: length mismatch");
  int j = 0;
  for (int p = 1; p <= k; ++p) {
    if (!f.is_zero(v[static_cast<size_t>(p - 1)])) {
      if (!f.eq(v[static_cast<size_t>(p - 1)], f.one()))
        throw std::invalid_argument("w_operator: input has no leading 1");
      j = p;
      break;
    }
  }
  if (j == 0) throw std::invalid_argument("w_operator: input has no leading 1");
  if (s < 1 || s > k + 1 - j) throw std::invalid_argument("w_operator: shift out of range");
  if (s == k + 1 - j) return v;
  const auto& pivot = v[static_cast<size_t>(j + s - 1)];
  if (f.is_zero(pivot))
    throw std::invalid_argument("w_operator: entry at the second position is zero");
  auto root = f.nth_root(f.one() / pivot, static_cast<unsigned>(s));
  if (!root)
    throw std::domain_error("w_operator: required " + std::to_string(s) +
                            "-th root is not representable in the " + f.name() + " backend");
  const auto c = (*root) * RootOfUnity{m, s}.value(f);
  Vec<F> out = v;
  for (int p = j + 1; p <= k; ++p)
    out[static_cast<size_t>(p - 1)] = v[static_cast<size_t>(p - 1)] * elem_pow(f, c, p - j);
  out[static_cast<size_t>(j + s - 1)] = f.one();
  return out;
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

template <class F>
struct CanonResult {
  CanonicalDescriptor descriptor;
  std::vector<typename F::Elem> representative;
  IsoWitness<F> witness;
  bool verified = false;
};

namespace detail {

template <class F>
typename F::Elem need_sqrt(const F& f, const typename F::Elem& x, const char* what) {
  auto r = f.sqrt(x);
  if (!r)
    throw std::domain_error(std::string("canonicalize: needs a square root of ") +
                            f.to_string(x) + " (" + what + "); use the complex backend");
  return *r;
}

template <class F>
typename F::Elem need_root(const F& f, const typename F::Elem& x, unsigned k, const char* what) {
  auto r = f.nth_root(x, k);
  if (!r)
    throw std::domain_error(std::string("canonicalize: needs a ") + std::to_string(k) +
                            "-th root of " + f.to_string(x) + " (" + what +
                            "); use the complex backend");
  return *r;
}

// Lexicographic order on flat vectors under (principal argument, modulus),
// with arguments wrapped into [0, 2pi) away from the positive real axis.
template <class F>
bool rep_less(const std::vector<typename F::Elem>& a, const std::vector<typename F::Elem>& b,
              const F& f) {
  constexpr double eps = 1e-6;
  auto key = [&](const typename F::Elem& x) -> std::pair<double, double> {
    const auto z = f.to_complex(x);
    double arg = std::atan2(z.imag(), z.real());
    if (arg < -eps) arg += 2.0 * M_PI;
    return {arg, std::abs(z)};
  };
  for (size_t i = 0; i < a.size(); ++i) {
    const bool az = f.is_zero(a[i]), bz = f.is_zero(b[i]);
    if (az != bz) return bz;  // same orbit branches share zero patterns; be safe anyway
    if (az) continue;
    const auto [arg_a, mod_a] = key(a[i]);
    const auto [arg_b, mod_b] = key(b[i]);
    if (std::abs(arg_a - arg_b) > eps) return arg_a < arg_b;
    if (std::abs(mod_a - mod_b) > eps * (1.0 + std::abs(mod_a))) return mod_a < mod_b;
  }
  return false;
}

template <class F>
struct CanonCandidate {
  IsoWitness<F> witness;
  std::vector<typename F::Elem> rep;
};

}  // namespace detail

template <class F>
CanonResult<F> canonicalize(FamilyTag family, int n, const std::vector<typename F::Elem>& flat,
                            const F& f, bool verify = true);

namespace detail {

template <class F>
CanonResult<F> finish_canonicalize(FamilyTag family, int n,
                                   const std::vector<typename F::Elem>& flat, const F& f,
                                   std::vector<CanonCandidate<F>> candidates,
                                   CanonicalDescriptor descriptor, bool verify) {
  if (candidates.empty()) throw std::logic_error("canonicalize: empty branch set");
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i)
    if (rep_less(candidates[i].rep, candidates[best].rep, f)) best = i;
  CanonResult<F> out;
  out.descriptor = std::move(descriptor);
  out.representative = candidates[best].rep;
  out.witness = candidates[best].witness;
  if (verify) {
    SuperAlgebra<F> src = family == FamilyTag::A
                              ? build_family_A(FamilyAParams<F>::from_flat(n, flat), f)
                              : build_family_B(FamilyBParams<F>::from_flat(n, flat), f);
    SuperAlgebra<F> dst =
        family == FamilyTag::A
            ? build_family_A(FamilyAParams<F>::from_flat(n, out.representative), f)
            : build_family_B(FamilyBParams<F>::from_flat(n, out.representative), f);
    auto change = materialize_basis_change(src, out.witness);
    if constexpr (F::is_exact) {
      // Exact backends compare the rewritten tensor directly.
      if (!algebras_equal(change.target, dst))
        throw std::logic_error("canonicalize: witness verification failed for descriptor " +
                               out.descriptor.id());
    }
    // The homomorphism residual T c(i,j) = [T_i, T_j] states the same tensor
    // equality without applying T^{-1}, which keeps the floating check
    // conditioned at the scale of the data.
    auto rep = verify_isomorphism(dst, src, change.map);
    if (!rep.pass)
      throw std::logic_error("canonicalize: witness verification failed for descriptor " +
                             out.descriptor.id());
    out.verified = true;
  }
  return out;
}

}  // namespace detail

template <class F>
CanonResult<F> canonicalize(FamilyTag family, int n, const std::vector<typename F::Elem>& flat,
                            const F& f, bool verify) {
  using Candidate = detail::CanonCandidate<F>;
  std::vector<Candidate> candidates;
  const auto add_candidate = [&](typename F::Elem a1, typename F::Elem a_top,
                                 typename F::Elem b) {
    IsoWitness<F> w;
    w.family = family;
    w.n = n;
    w.a1 = std::move(a1);
    w.a_top = std::move(a_top);
    w.b_top = std::move(b);
    w.b_prev = f.zero();
    Candidate c;
    if (family == FamilyTag::A)
      c.rep = induced_params(FamilyAParams<F>::from_flat(n, flat), w, f).flat();
    else
      c.rep = induced_params(FamilyBParams<F>::from_flat(n, flat), w, f).flat();
    c.witness = std::move(w);
    candidates.push_back(std::move(c));
  };

  if (family == FamilyTag::A) {
    const auto p = FamilyAParams<F>::from_flat(n, flat);
    const bool odd = n % 2 == 1;
    const int q = odd ? (n + 1) / 2 : n / 2;
    const auto four = f.from_int(4);

    if (!f.is_zero(p.gamma)) {
      const auto sqrt_gamma = detail::need_sqrt(f, p.gamma, "normalizing gamma");
      if (odd) {
        const auto disc = p.gamma - four * p.beta.front() * p.beta.front();
        // Tail and, in the degenerate middle case, the trailing beta as well.
        const bool degenerate = f.is_zero(disc);
        std::vector<typename F::Elem> block(p.beta.begin() + 1, p.beta.end());
        if (degenerate) block.push_back(p.beta_last);
        int t = 0;
        for (size_t i = 0; i < block.size(); ++i)
          if (!f.is_zero(block[i])) {
            t = static_cast<int>(i) + 1;
            break;
          }
        for (int delta : {1, -1}) {
          const auto delta_e = f.from_int(delta);
          std::vector<typename F::Elem> c_branches;
          if (t == 0) {
            c_branches.push_back(f.one());
          } else {
            const auto base =
                detail::need_root(f, sqrt_gamma / (delta_e * block[t - 1]),
                                  static_cast<unsigned>(t), "normalizing the leading tail entry");
            for (long mm = 0; mm < t; ++mm)
              c_branches.push_back(base * RootOfUnity{mm, t}.value(f));
          }
          for (const auto& c : c_branches) {
            const auto a1 =
                detail::need_root(f, f.one() / c, 2, "realizing a1 from its square");
            const auto b = delta_e * elem_pow(f, a1, n) / sqrt_gamma;
            const auto a_top = degenerate ? f.zero() : -(a1 * p.beta_last) / disc;
            add_candidate(a1, a_top, b);
          }
        }
        const std::string label = degenerate ? "1.2" : "1.1";
        const int block_len = static_cast<int>(FamilyAParams<F>::beta_count(n)) - 1 +
                              (degenerate ? 1 : 0);
        const int jj = t == 0 ? block_len + 1 : t;
        return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                           make_descriptor(family, n, label, jj, 0), verify);
      }
      // Even n: the tail scales through odd powers of 1/a1, so the sign
      // choice folds into the root branch.
      const auto& tail = p.beta;
      int t = 0;
      for (size_t i = 0; i < tail.size(); ++i)
        if (!f.is_zero(tail[i])) {
          t = static_cast<int>(i) + 1;
          break;
        }
      std::vector<typename F::Elem> e_branches;
      if (t == 0) {
        e_branches.push_back(f.one());
      } else {
        const long order = 2L * t - 1;
        const auto base = detail::need_root(f, sqrt_gamma / tail[t - 1],
                                            static_cast<unsigned>(order),
                                            "normalizing the leading tail entry");
        for (long mm = 0; mm < order; ++mm)
          e_branches.push_back(base * RootOfUnity{mm, order}.value(f));
      }
      for (const auto& e : e_branches) {
        const auto a1 = f.one() / e;
        const auto b = elem_pow(f, a1, n) / sqrt_gamma;
        const auto a_top = -(a1 * p.beta_last) / p.gamma;
        add_candidate(a1, a_top, b);
      }
      const int jj = t == 0 ? static_cast<int>(tail.size()) + 1 : t;
      return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                         make_descriptor(family, n, "1", jj, 0), verify);
    }

    // gamma = 0.
    if (odd && !f.is_zero(p.beta.front())) {
      // beta_{t0} normalizes to 1 and the trailing beta is absorbed.
      std::vector<typename F::Elem> tail(p.beta.begin() + 1, p.beta.end());
      int t = 0;
      for (size_t i = 0; i < tail.size(); ++i)
        if (!f.is_zero(tail[i])) {
          t = static_cast<int>(i) + 1;
          break;
        }
      std::vector<typename F::Elem> c_branches;
      if (t == 0) {
        c_branches.push_back(f.one());
      } else {
        const auto base = detail::need_root(f, p.beta.front() / tail[t - 1],
                                            static_cast<unsigned>(t),
                                            "normalizing the leading tail entry");
        for (long mm = 0; mm < t; ++mm) c_branches.push_back(base * RootOfUnity{mm, t}.value(f));
      }
      for (const auto& c : c_branches) {
        const auto a1 = detail::need_root(f, f.one() / c, 2, "realizing a1 from its square");
        const auto b = elem_pow(f, a1, n) / p.beta.front();
        const auto a_top =
            b * p.beta_last / (four * elem_pow(f, a1, n - 1) * p.beta.front());
        add_candidate(a1, a_top, b);
      }
      const int tail_len = static_cast<int>(tail.size());
      const int jj = t == 0 ? tail_len + 1 : t;
      return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                         make_descriptor(family, n, "2.1", jj, 0), verify);
    }

    // gamma = 0 and (even n, or the leading beta vanishes): two-parameter
    // scaling on the block (remaining betas, trailing beta).
    std::vector<typename F::Elem> block;
    if (odd)
      block.assign(p.beta.begin() + 1, p.beta.end());
    else
      block = p.beta;
    block.push_back(p.beta_last);
    // Absolute formal index of block position p is q+1+p; the relation
    // exponent is 2(q+1+p)-3.
    int j1 = 0, j2 = 0;
    for (size_t i = 0; i < block.size(); ++i)
      if (!f.is_zero(block[i])) {
        if (j1 == 0)
          j1 = static_cast<int>(i) + 1;
        else if (j2 == 0) {
          j2 = static_cast<int>(i) + 1;
          break;
        }
      }
    const std::string zero_label = odd ? "2.2.2" : "0";
    const std::string label = odd ? "2.2.1" : "2";
    if (j1 == 0) {
      add_candidate(f.one(), f.zero(), f.one());
      return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                         make_descriptor(family, n, zero_label, 0, 0), verify);
    }
    std::vector<typename F::Elem> c_branches;
    if (j2 == 0) {
      c_branches.push_back(f.one());
    } else {
      const int shift = j2 - j1;
      const auto base = detail::need_root(f, block[j1 - 1] / block[j2 - 1],
                                          static_cast<unsigned>(shift),
                                          "normalizing the second entry");
      for (long mm = 0; mm < shift; ++mm)
        c_branches.push_back(base * RootOfUnity{mm, shift}.value(f));
    }
    const long abs_j1 = q + 1 + j1;
    for (const auto& c : c_branches) {
      const auto a1 = detail::need_root(f, f.one() / c, 2, "realizing a1 from its square");
      const auto b = elem_pow(f, a1, 2 * abs_j1 - 3) / block[j1 - 1];
      add_candidate(a1, f.zero(), b);
    }
    const int blk_len = static_cast<int>(block.size());
    const int ss = j2 == 0 ? blk_len + 1 - j1 : j2 - j1;
    return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                       make_descriptor(family, n, label, j1, ss), verify);
  }

  // Family B: pure two-parameter scaling on the whole vector.
  const auto p = FamilyBParams<F>::from_flat(n, flat);
  const int s0 = FamilyBParams<F>::s0(n);
  int j1 = 0, j2 = 0;
  for (size_t i = 0; i < p.beta.size(); ++i)
    if (!f.is_zero(p.beta[i])) {
      if (j1 == 0)
        j1 = static_cast<int>(i) + 1;
      else if (j2 == 0) {
        j2 = static_cast<int>(i) + 1;
        break;
      }
    }
  if (j1 == 0) {
    add_candidate(f.one(), f.zero(), f.one());
    return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                       make_descriptor(family, n, "B.0", 0, 0), verify);
  }
  std::vector<typename F::Elem> c_branches;
  if (j2 == 0) {
    c_branches.push_back(f.one());
  } else {
    const int shift = j2 - j1;
    const auto base = detail::need_root(f, p.beta[j1 - 1] / p.beta[j2 - 1],
                                        static_cast<unsigned>(shift), "normalizing the second entry");
    for (long mm = 0; mm < shift; ++mm) c_branches.push_back(base * RootOfUnity{mm, shift}.value(f));
  }
  const long abs_j1 = s0 + j1 - 1;
  for (const auto& c : c_branches) {
    const auto a1 = detail::need_root(f, f.one() / c, 2, "realizing a1 from its square");
    const auto b = elem_pow(f, a1, 2 * abs_j1 - 3) / p.beta[j1 - 1];
    add_candidate(a1, f.zero(), b);
  }
  const int len = static_cast<int>(p.beta.size());
  const int ss = j2 == 0 ? len + 1 - j1 : j2 - j1;
  return detail::finish_canonicalize(family, n, flat, f, std::move(candidates),
                                     make_descriptor(family, n, "B.1", j1, ss), verify);
}

// ---------------------------------------------------------------------------
// Pairwise distinctness over a finite grid
// ---------------------------------------------------------------------------

struct DistinctReport {
  size_t descriptor_count = 0;
  size_t instance_count = 0;
  size_t class_count = 0;
  size_t pairs_checked = 0;
  struct Collision {
    std::string left, right;
  };
  std::vector<Collision> collisions;
  bool pass() const { return collisions.empty(); }
};

// Instantiates every descriptor's free slots over the grid, identifies
// branch-equivalent instantiations through the canonicalizer, and then
// demands iso_solvable = no for every remaining pair.  Decisions run in the
// exact input field; deduplication runs on complex representatives.
template <class FE>
DistinctReport pairwise_distinct(FamilyTag family, int n,
                                 const std::vector<typename FE::Elem>& grid, const FE& f,
                                 double tol = 1e-9) {
  static_assert(FE::is_exact, "pairwise_distinct wants an exact field for the decisions");
  ComplexField cf(tol);
  DistinctReport report;
  const auto descriptors = enumerate_descriptors(family, n);
  report.descriptor_count = descriptors.size();

  struct Instance {
    std::vector<typename FE::Elem> flat;
    std::vector<std::complex<double>> rep;
    std::string label;
  };
  std::vector<Instance> classes;

  const auto four = f.from_int(4);
  for (const auto& d : descriptors) {
    const auto free_pos = d.free_positions();
    std::vector<size_t> odometer(free_pos.size(), 0);
    for (;;) {
      std::vector<typename FE::Elem> values;
      for (size_t t = 0; t < free_pos.size(); ++t) values.push_back(grid[odometer[t]]);
      auto flat = instantiate_descriptor(d, values, f);
      bool admissible = true;
      if (family == FamilyTag::A && n % 2 == 1 && d.case_label == "1.1") {
        // The middle parameter must keep gamma - 4 beta^2 nonzero.
        const auto& beta_mid = flat[1];
        if (f.is_zero(f.one() - four * beta_mid * beta_mid)) admissible = false;
      }
      if (admissible) {
        ++report.instance_count;
        std::vector<std::complex<double>> cflat;
        for (const auto& x : flat) cflat.push_back(f.to_complex(x));
        auto canon = canonicalize(family, n, cflat, cf, /*verify=*/false);
        std::vector<std::complex<double>> rep = canon.representative;
        bool found = false;
        for (const auto& cls : classes) {
          if (cls.rep.size() != rep.size()) continue;
          bool same = true;
          for (size_t i = 0; i < rep.size() && same; ++i)
            if (std::abs(cls.rep[i] - rep[i]) > 1e-6) same = false;
          if (same) {
            found = true;
            break;
          }
        }
        if (!found) classes.push_back({std::move(flat), std::move(rep), d.id()});
      }
      // advance odometer
      size_t t = 0;
      while (t < odometer.size()) {
        if (++odometer[t] < grid.size()) break;
        odometer[t] = 0;
        ++t;
      }
      if (t == odometer.size()) break;
      if (odometer.empty()) break;
    }
  }
  report.class_count = classes.size();

  for (size_t i = 0; i < classes.size(); ++i)
    for (size_t j = i + 1; j < classes.size(); ++j) {
      ++report.pairs_checked;
      IsoConditionSystem<FE> sys;
      sys.family = family;
      sys.n = n;
      sys.source = classes[i].flat;
      sys.target = classes[j].flat;
      const auto dec = iso_solvable(sys, f);
      if (dec.isomorphic)
        report.collisions.push_back({classes[i].label, classes[j].label});
    }
  return report;
}

}  // namespace leibniz
