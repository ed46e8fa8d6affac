#pragma once

// JSON serialization of algebras, parameter records, invariant reports,
// witnesses, and descriptors.  Exact scalars round-trip bit-exactly:
// rationals as "p/q" strings, cyclotomic elements as rational coefficient
// arrays with the conductor carried in the scalar tag, complex values as
// {"re", "im"} binary64 pairs.

#include "leibniz/classification.hpp"
#include "leibniz/cyclotomic.hpp"

#include <nlohmann/json.hpp>

namespace leibniz {

using json = nlohmann::ordered_json;

inline json scalar_to_json(const RationalField& f, const Rational& v) {
  return f.to_string(v);
}
inline json scalar_to_json(const ComplexField&, const std::complex<double>& v) {
  return json{{"re", v.real()}, {"im", v.imag()}};
}
inline json scalar_to_json(const CyclotomicField& f, const CyclotomicField::Elem& v) {
  json arr = json::array();
  const auto full = f.from_coeffs({}) + v;  // pad rational constants to full length
  for (const auto& c : full.c) arr.push_back(rational_to_string(c));
  return arr;
}

inline Rational scalar_from_json(const RationalField&, const json& j) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational value (\"p/q\" or integer)");
}
inline std::complex<double> scalar_from_json(const ComplexField&, const json& j) {
  if (j.is_object()) return {j.at("re").get<double>(), j.at("im").get<double>()};
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string())
    return {static_cast<double>(rational_from_string(j.get<std::string>())), 0.0};
  throw std::invalid_argument("expected a complex value ({\"re\",\"im\"}, number, or \"p/q\")");
}
inline CyclotomicField::Elem scalar_from_json(const CyclotomicField& f, const json& j) {
  if (j.is_array()) {
    std::vector<Rational> coeffs;
    for (const auto& c : j) {
      if (c.is_string())
        coeffs.push_back(rational_from_string(c.get<std::string>()));
      else if (c.is_number_integer())
        coeffs.push_back(Rational(c.get<long long>()));
      else
        throw std::invalid_argument("cyclotomic coefficients must be rational");
    }
    return f.from_coeffs(std::move(coeffs));
  }
  if (j.is_string()) return f.from_rational(rational_from_string(j.get<std::string>()));
  if (j.is_number_integer()) return f.from_rational(Rational(j.get<long long>()));
  throw std::invalid_argument("expected a cyclotomic value (coefficient array or rational)");
}

template <class F>
json algebra_to_json(const SuperAlgebra<F>& alg) {
  const auto& f = alg.field();
  json out;
  out["even_dim"] = alg.even_dim();
  out["odd_dim"] = alg.odd_dim();
  out["basis"] = alg.basis().labels;
  json par = json::array();
  for (Parity p : alg.basis().parity) par.push_back(p == Parity::odd ? 1 : 0);
  out["parity"] = par;
  out["scalar"] = f.name();
  json brackets = json::array();
  for (size_t i = 0; i < alg.dim(); ++i)
    for (size_t j = 0; j < alg.dim(); ++j) {
      json entries = json::array();
      for (size_t k = 0; k < alg.dim(); ++k)
        if (!f.is_zero(alg.c(i, j, k)))
          entries.push_back(json{{"k", k}, {"v", scalar_to_json(f, alg.c(i, j, k))}});
      if (!entries.empty()) brackets.push_back(json{{"l", i}, {"r", j}, {"out", entries}});
    }
  out["brackets"] = brackets;
  return out;
}

inline std::string scalar_tag_of_json(const json& j) {
  return j.at("scalar").get<std::string>();
}

template <class F>
SuperAlgebra<F> algebra_from_json(const json& j, const F& f) {
  const auto tag = scalar_tag_of_json(j);
  if (tag != f.name())
    throw std::invalid_argument("algebra file uses scalar backend '" + tag +
                                "', loader expects '" + f.name() + "'");
  const size_t n = j.at("even_dim").get<size_t>();
  const size_t m = j.at("odd_dim").get<size_t>();
  std::vector<std::string> labels = j.at("basis").get<std::vector<std::string>>();
  std::vector<Parity> parity;
  for (const auto& p : j.at("parity")) {
    const int v = p.get<int>();
    if (v != 0 && v != 1) throw std::invalid_argument("parity entries must be 0 or 1");
    parity.push_back(v == 1 ? Parity::odd : Parity::even);
  }
  GradedBasis basis(std::move(labels), std::move(parity));
  if (basis.even_dim() != n || basis.odd_dim() != m)
    throw std::invalid_argument("even_dim/odd_dim do not match the parity vector");
  SuperAlgebra<F> alg(std::move(basis), f);
  for (const auto& b : j.at("brackets")) {
    const size_t l = b.at("l").get<size_t>();
    const size_t r = b.at("r").get<size_t>();
    for (const auto& e : b.at("out")) {
      const size_t k = e.at("k").get<size_t>();
      alg.set_c(l, r, k, scalar_from_json(f, e.at("v")));
    }
  }
  return alg;
}

template <class F>
json family_a_params_to_json(const FamilyAParams<F>& p, const F& f) {
  json out;
  out["gamma"] = scalar_to_json(f, p.gamma);
  json betas = json::array();
  for (const auto& b : p.beta) betas.push_back(scalar_to_json(f, b));
  out["beta"] = betas;
  out["beta_last"] = scalar_to_json(f, p.beta_last);
  return out;
}

template <class F>
json family_b_params_to_json(const FamilyBParams<F>& p, const F& f) {
  json betas = json::array();
  for (const auto& b : p.beta) betas.push_back(scalar_to_json(f, b));
  return json{{"beta", betas}};
}

template <class F>
FamilyAParams<F> family_a_params_from_json(const json& j, int n, const F& f) {
  FamilyAParams<F> p;
  p.n = n;
  p.gamma = j.contains("gamma") ? scalar_from_json(f, j.at("gamma")) : f.zero();
  if (j.contains("beta"))
    for (const auto& b : j.at("beta")) p.beta.push_back(scalar_from_json(f, b));
  p.beta.resize(FamilyAParams<F>::beta_count(n), f.zero());
  p.beta_last = j.contains("beta_last") ? scalar_from_json(f, j.at("beta_last")) : f.zero();
  p.validate();
  return p;
}

template <class F>
FamilyBParams<F> family_b_params_from_json(const json& j, int n, const F& f) {
  FamilyBParams<F> p;
  p.n = n;
  if (j.contains("beta"))
    for (const auto& b : j.at("beta")) p.beta.push_back(scalar_from_json(f, b));
  p.beta.resize(FamilyBParams<F>::beta_count(n), f.zero());
  p.validate();
  return p;
}

template <class F>
json witness_to_json(const IsoWitness<F>& w, const F& f) {
  json out;
  out["family"] = family_name(w.family);
  out["n"] = w.n;
  out["a1"] = scalar_to_json(f, w.a1);
  out["a_top"] = scalar_to_json(f, w.a_top);
  out["b_top"] = scalar_to_json(f, w.b_top);
  out["b_prev"] = scalar_to_json(f, w.b_prev);
  return out;
}

inline json descriptor_to_json(const CanonicalDescriptor& d) {
  json out;
  out["id"] = d.id();
  out["family"] = family_name(d.family);
  out["n"] = d.n;
  out["case"] = d.case_label;
  out["j"] = d.j;
  out["s"] = d.s;
  json pattern = json::array();
  for (const auto& e : d.pattern) {
    if (e.fixed)
      pattern.push_back(json{{"fixed", rational_to_string(e.value)}});
    else
      pattern.push_back(json{{"free", true}});
  }
  out["pattern"] = pattern;
  out["ambiguity_order"] = d.ambiguity_order;
  if (!d.constraint_note.empty()) out["constraint"] = d.constraint_note;
  return out;
}

template <class F>
json invariant_report_to_json(const SuperAlgebra<F>& alg, size_t samples, uint64_t seed) {
  json out;
  const auto series = central_series(alg, alg.dim() + 2);
  if (series.nilindex)
    out["nilindex"] = *series.nilindex;
  else
    out["nilindex"] = nullptr;
  out["series_dims"] = series.dims;
  if constexpr (F::is_exact) {
    if (series.nilindex) {
      const auto cs = characteristic_sequence(alg, samples, seed);
      out["char_seq"] = json{{"even", cs.even}, {"odd", cs.odd}};
      out["char_seq_same_witness"] = json{{"even", cs.joint_even}, {"odd", cs.joint_odd}};
      out["char_seq_readings_agree"] = cs.readings_agree;
    }
  }
  out["right_annihilator_dim"] = right_annihilator(alg).basis.size();
  const auto gens = generator_info(alg);
  json parities = json::array();
  for (Parity p : gens.parities) parities.push_back(p == Parity::odd ? 1 : 0);
  out["generators"] = json{{"count", gens.count}, {"parities", parities}};
  return out;
}

}  // namespace leibniz
