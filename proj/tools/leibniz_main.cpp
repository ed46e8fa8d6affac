// Command-line front end: constructs family algebras, checks the graded
// identities, computes invariant reports, decides isomorphism from the
// closed-form conditions, canonicalizes parameters, lists descriptors, and
// runs the end-to-end verification pipeline.
//
// Exit codes: 0 = all checks pass (or: isomorphic), 1 = mathematical
// violation found (or: not isomorphic), 2 = usage or parse error.

#include "leibniz/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace leibniz;

int log_level() {
  const char* env = std::getenv("LEIBNIZ_SUPER_LOG");
  if (!env) return 0;
  const std::string v(env);
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[info] " << msg << "\n";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_arg(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw UsageError("cannot open file: " + arg);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

FamilyTag parse_family(const std::string& s) {
  if (s == "A" || s == "a") return FamilyTag::A;
  if (s == "B" || s == "b") return FamilyTag::B;
  throw UsageError("unknown family: " + s);
}

struct ScalarChoice {
  std::string tag = "rational";
  double tol = 1e-9;

  bool is_rational() const { return tag == "rational"; }
  bool is_complex() const { return tag == "complex"; }
  bool is_cyclotomic() const { return tag.rfind("cyclotomic:", 0) == 0; }
  unsigned conductor() const {
    if (!is_cyclotomic()) throw UsageError("scalar backend is not cyclotomic");
    return static_cast<unsigned>(std::stoul(tag.substr(std::string("cyclotomic:").size())));
  }
};

template <class Fn>
int dispatch_scalar(const ScalarChoice& sc, Fn&& fn) {
  if (sc.is_rational()) return fn(RationalField{});
  if (sc.is_complex()) return fn(ComplexField{sc.tol});
  if (sc.is_cyclotomic()) return fn(CyclotomicField{sc.conductor()});
  throw UsageError("unknown scalar backend: " + sc.tag);
}

// ---------------------------------------------------------------------- build

template <class F>
SuperAlgebra<F> build_from_config(const std::string& family, int n, const json& params,
                                  const F& f) {
  if (family == "model1") return build_model_1(n, f);
  if (family == "model2") {
    const int m = params.contains("m") ? params.at("m").get<int>() : n + 1;
    return build_model_2(n, m, f);
  }
  if (family == "A" || family == "a")
    return build_family_A(family_a_params_from_json(params, n, f), f);
  if (family == "B" || family == "b")
    return build_family_B(family_b_params_from_json(params, n, f), f);
  throw UsageError("unknown family: " + family);
}

int cmd_build(const std::string& family, int n, const std::string& params_arg,
              const ScalarChoice& sc, const std::string& out) {
  const json params = params_arg.empty() ? json::object() : read_json_arg(params_arg);
  return dispatch_scalar(sc, [&](auto f) {
    const auto alg = build_from_config(family, n, params, f);
    emit(algebra_to_json(alg), out);
    return 0;
  });
}

// ---------------------------------------------------------------------- check

template <class F>
int run_check(const json& j, const F& f) {
  const auto alg = algebra_from_json(j, f);
  const auto grading = check_grading(alg);
  const auto leibniz = check_graded_leibniz(alg);
  const auto antisym = check_graded_antisymmetry(alg);
  json out;
  out["grading"] = json{{"pass", grading.pass}, {"violations", grading.violations.size()}};
  out["graded_leibniz"] =
      json{{"pass", leibniz.pass}, {"violations", leibniz.violations.size()}};
  if (!leibniz.note.empty()) out["graded_leibniz"]["note"] = leibniz.note;
  out["graded_antisymmetry"] = json{{"pass", antisym.pass}};
  json viol = json::array();
  size_t listed = 0;
  for (const auto& v : grading.violations)
    if (listed++ < 20) viol.push_back(json{{"kind", "grading"}, {"i", v.i}, {"j", v.j}, {"k", v.k}});
  for (const auto& v : leibniz.violations)
    if (listed++ < 40)
      viol.push_back(json{{"kind", "leibniz"}, {"i", v.i}, {"j", v.j}, {"k", v.k}});
  if (!viol.empty()) out["violations"] = viol;
  std::cout << out.dump(2) << "\n";
  return (grading.pass && leibniz.pass) ? 0 : 1;
}

int cmd_check(const std::string& file, double tol) {
  const json j = read_json_arg(file);
  ScalarChoice sc;
  sc.tag = scalar_tag_of_json(j);
  sc.tol = tol;
  return dispatch_scalar(sc, [&](auto f) { return run_check(j, f); });
}

// ----------------------------------------------------------------- invariants

int cmd_invariants(const std::string& file, size_t samples, uint64_t seed, double tol,
                   const std::string& out) {
  const json j = read_json_arg(file);
  ScalarChoice sc;
  sc.tag = scalar_tag_of_json(j);
  sc.tol = tol;
  return dispatch_scalar(sc, [&](auto f) {
    const auto alg = algebra_from_json(j, f);
    emit(invariant_report_to_json(alg, samples, seed), out);
    return 0;
  });
}

// ------------------------------------------------------------------------ iso

template <class F>
int run_iso(FamilyTag family, int n, const json& left, const json& right,
            const std::string& witness_out, const F& f) {
  IsoConditionSystem<F> sys;
  if (family == FamilyTag::A) {
    sys = make_iso_system(family_a_params_from_json(left, n, f),
                          family_a_params_from_json(right, n, f));
  } else {
    sys = make_iso_system(family_b_params_from_json(left, n, f),
                          family_b_params_from_json(right, n, f));
  }
  const auto dec = iso_solvable(sys, f);
  json out;
  out["isomorphic"] = dec.isomorphic;
  if (!dec.isomorphic) out["reason"] = dec.reason;
  if (dec.isomorphic) {
    if (dec.witness) {
      out["witness"] = witness_to_json(*dec.witness, f);
    } else {
      // Roots leave the exact backend; publish the principal complex witness.
      const auto cdec = iso_solvable_complex(sys, f);
      if (cdec.witness) {
        ComplexField cf;
        out["witness"] = witness_to_json(*cdec.witness, cf);
        out["witness_backend"] = "complex";
      }
    }
  }
  if (!witness_out.empty() && out.contains("witness")) emit(out.at("witness"), witness_out);
  std::cout << out.dump(2) << "\n";
  return dec.isomorphic ? 0 : 1;
}

int cmd_iso(const std::string& family_s, int n, const std::string& left_file,
            const std::string& right_file, const std::string& witness_out,
            const ScalarChoice& sc) {
  const auto family = parse_family(family_s);
  const json left = read_json_arg(left_file);
  const json right = read_json_arg(right_file);
  return dispatch_scalar(sc,
                         [&](auto f) { return run_iso(family, n, left, right, witness_out, f); });
}

// ----------------------------------------------------------------------- canon

int cmd_canon(const std::string& family_s, int n, const std::string& params_arg, double tol,
              const std::string& out) {
  const auto family = parse_family(family_s);
  const json params = read_json_arg(params_arg);
  ComplexField f(tol);
  std::vector<std::complex<double>> flat;
  if (family == FamilyTag::A)
    flat = family_a_params_from_json(params, n, f).flat();
  else
    flat = family_b_params_from_json(params, n, f).flat();
  const auto res = canonicalize(family, n, flat, f);
  json j;
  j["descriptor"] = descriptor_to_json(res.descriptor);
  json rep = json::array();
  for (const auto& x : res.representative) rep.push_back(scalar_to_json(f, x));
  j["representative"] = rep;
  j["witness"] = witness_to_json(res.witness, f);
  j["verified"] = res.verified;
  emit(j, out);
  return res.verified ? 0 : 1;
}

// ------------------------------------------------------------------- enumerate

int cmd_enumerate(const std::string& family_s, int n, const std::string& out) {
  const auto family = parse_family(family_s);
  json j = json::array();
  for (const auto& d : enumerate_descriptors(family, n)) j.push_back(descriptor_to_json(d));
  emit(j, out);
  return 0;
}

// --------------------------------------------------------- verify-classification

struct StageResult {
  bool pass = true;
  json report;
};

template <class F>
std::vector<typename F::Elem> random_flat(FamilyTag family, int n, SeededRng& rng, const F& f) {
  if (family == FamilyTag::A) return random_family_a_params(n, rng, f).flat();
  return random_family_b_params(n, rng, f).flat();
}

StageResult stage_identity_invariants(FamilyTag family, int n, size_t samples, SeededRng& rng,
                                      bool inject_bug) {
  RationalField f;
  StageResult res;
  size_t pass_count = 0;
  json failures = json::array();
  for (size_t t = 0; t < samples; ++t) {
    auto alg = family == FamilyTag::A ? build_family_A(random_family_a_params(n, rng, f), f)
                                      : build_family_B(random_family_b_params(n, rng, f), f);
    if (inject_bug && t == 0) alg.add_c(0, 0, 1, f.one());  // grading-consistent tampering
    const bool grading = check_grading(alg).pass;
    const bool leibniz = check_graded_leibniz(alg).pass;
    const auto series = central_series(alg, alg.dim() + 2);
    const bool nil = series.nilindex && *series.nilindex == alg.dim();
    bool char_ok = false, gen_ok = false;
    if (series.nilindex) {
      const auto cs = characteristic_sequence(alg, 6, 0);
      const std::vector<size_t> expect_even{static_cast<size_t>(n)};
      const std::vector<size_t> expect_odd{alg.odd_dim() - 1, 1};
      char_ok = cs.even == expect_even && cs.odd == expect_odd && cs.readings_agree;
      const auto g = generator_info(alg);
      gen_ok = g.count == 2 && g.parities == std::vector<Parity>{Parity::odd, Parity::odd};
    }
    if (grading && leibniz && nil && char_ok && gen_ok) {
      ++pass_count;
    } else {
      res.pass = false;
      failures.push_back(json{{"instance", t},
                              {"grading", grading},
                              {"graded_leibniz", leibniz},
                              {"nilindex_is_n_plus_m", nil},
                              {"char_seq", char_ok},
                              {"generators", gen_ok}});
    }
  }
  res.report = json{{"instances", samples}, {"passed", pass_count}};
  if (!failures.empty()) res.report["failures"] = failures;
  return res;
}

StageResult stage_canonical_roundtrip(FamilyTag family, int n, size_t samples, SeededRng& rng,
                                      double tol) {
  RationalField rf;
  ComplexField cf(tol);
  StageResult res;
  size_t verified = 0, idempotent = 0, orbit_sound = 0;
  const size_t count = std::max<size_t>(4, samples / 5);
  const std::vector<Rational> a1_pool{Rational(1), Rational(-1), Rational(2), Rational(1, 2),
                                      Rational(3, 2)};
  for (size_t t = 0; t < count; ++t) {
    const auto flat_r = random_flat(family, n, rng, rf);
    std::vector<std::complex<double>> flat;
    for (const auto& x : flat_r) flat.emplace_back(static_cast<double>(x), 0.0);
    try {
      const auto once = canonicalize(family, n, flat, cf);
      if (once.verified) ++verified;
      const auto twice = canonicalize(family, n, once.representative, cf);
      bool same = twice.descriptor.id() == once.descriptor.id();
      for (size_t i = 0; i < once.representative.size() && same; ++i)
        same = std::abs(once.representative[i] - twice.representative[i]) <= 1e-9;
      if (same) ++idempotent;

      IsoWitness<RationalField> w;
      w.family = family;
      w.n = n;
      w.a1 = a1_pool[static_cast<size_t>(rng.int_in(0, 4))];
      w.a_top = rng.rational(2, 2);
      w.b_top = rng.nonzero_rational(3, 2);
      w.b_prev = Rational(0);
      std::vector<Rational> moved_r;
      if (family == FamilyTag::A)
        moved_r = induced_params(FamilyAParams<RationalField>::from_flat(n, flat_r), w, rf).flat();
      else
        moved_r = induced_params(FamilyBParams<RationalField>::from_flat(n, flat_r), w, rf).flat();
      std::vector<std::complex<double>> moved;
      for (const auto& x : moved_r) moved.emplace_back(static_cast<double>(x), 0.0);
      const auto other = canonicalize(family, n, moved, cf);
      bool sound = other.descriptor.id() == once.descriptor.id();
      for (size_t i = 0; i < once.representative.size() && sound; ++i)
        sound = std::abs(once.representative[i] - other.representative[i]) <= 1e-9;
      if (sound) ++orbit_sound;
    } catch (const std::exception& e) {
      res.pass = false;
      res.report["error"] = e.what();
      break;
    }
  }
  res.report["instances"] = count;
  res.report["verified"] = verified;
  res.report["idempotent"] = idempotent;
  res.report["orbit_sound"] = orbit_sound;
  if (verified != count || idempotent != count || orbit_sound != count) res.pass = false;
  return res;
}

StageResult stage_pairwise(FamilyTag family, int n) {
  CyclotomicField f(4);
  std::vector<CyclotomicField::Elem> grid{f.from_int(0), f.from_int(1), f.from_int(-1),
                                          f.from_int(2), f.zeta_power(1)};
  const auto rep = pairwise_distinct(family, n, grid, f);
  StageResult res;
  res.pass = rep.pass();
  res.report = json{{"descriptors", rep.descriptor_count},
                    {"instances", rep.instance_count},
                    {"classes", rep.class_count},
                    {"pairs_checked", rep.pairs_checked},
                    {"collisions", rep.collisions.size()}};
  if (!rep.collisions.empty()) {
    json det = json::array();
    for (const auto& c : rep.collisions) det.push_back(json{{"left", c.left}, {"right", c.right}});
    res.report["collision_detail"] = det;
  }
  return res;
}

StageResult stage_subalgebra(FamilyTag family, int n, SeededRng& rng) {
  RationalField f;
  StageResult res;
  const auto alg = family == FamilyTag::A
                       ? build_family_A(random_family_a_params(n, rng, f), f)
                       : build_family_B(random_family_b_params(n, rng, f), f);
  Vec<RationalField> y1(alg.dim(), f.zero());
  y1[static_cast<size_t>(n)] = f.one();
  const auto closure = subalgebra_generated(alg, {y1});
  const size_t expected = alg.dim() - 1;
  bool dim_ok = closure.size() == expected;
  bool gen_ok = false, nil_ok = false;
  if (dim_ok) {
    const auto sub = restrict_to_subalgebra(alg, closure);
    const auto g = generator_info(sub);
    gen_ok = g.count == 1 && g.parities == std::vector<Parity>{Parity::odd};
    const auto s = central_series(sub, sub.dim() + 2);
    nil_ok = s.nilindex && *s.nilindex == sub.dim() + 1;
  }
  res.pass = dim_ok && gen_ok && nil_ok;
  res.report = json{{"closure_dim", closure.size()},
                    {"expected_dim", expected},
                    {"one_generated_odd", gen_ok},
                    {"maximal_nilindex", nil_ok}};
  return res;
}

int cmd_verify_classification(const std::string& family_s, const std::string& n_range,
                              size_t samples, uint64_t seed, double tol, bool inject_bug,
                              const std::string& out) {
  std::vector<FamilyTag> families;
  if (family_s == "both" || family_s.empty()) {
    families = {FamilyTag::A, FamilyTag::B};
  } else {
    families = {parse_family(family_s)};
  }
  int lo = 0, hi = 0;
  const auto dots = n_range.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::stoi(n_range);
  } else {
    lo = std::stoi(n_range.substr(0, dots));
    hi = std::stoi(n_range.substr(dots + 2));
  }
  if (lo < 3 || hi < lo) throw UsageError("invalid n range: " + n_range);

  json report;
  report["config"] = json{{"families", family_s.empty() ? "both" : family_s},
                          {"n_range", n_range},
                          {"samples", samples},
                          {"seed", seed}};
  bool all_pass = true;
  json per_case = json::array();
  for (const auto family : families) {
    for (int n = lo; n <= hi; ++n) {
      log_info("verifying family " + family_name(family) + ", n = " + std::to_string(n));
      SeededRng rng(seed ^ (static_cast<uint64_t>(n) << 8) ^
                    (family == FamilyTag::A ? 0x0 : 0x1));
      json entry;
      entry["family"] = family_name(family);
      entry["n"] = n;
      const auto s1 = stage_identity_invariants(family, n, samples, rng, inject_bug);
      entry["identity_invariants"] = s1.report;
      const auto s2 = stage_canonical_roundtrip(family, n, samples, rng, tol);
      entry["canonicalization"] = s2.report;
      const auto s3 = stage_pairwise(family, n);
      entry["pairwise_distinct"] = s3.report;
      const auto s4 = stage_subalgebra(family, n, rng);
      entry["odd_generator_subalgebra"] = s4.report;
      const bool pass = s1.pass && s2.pass && s3.pass && s4.pass;
      entry["pass"] = pass;
      all_pass = all_pass && pass;
      per_case.push_back(entry);
    }
  }
  report["cases"] = per_case;
  report["pass"] = all_pass;
  emit(report, out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-arithmetic toolkit for nilpotent Leibniz superalgebras with "
               "characteristic sequence (n | m-1, 1) and nilindex n+m"};
  app.require_subcommand(1);

  std::string family, params, out, left, right, witness_out, n_range, algebra_file;
  int n = 5;
  ScalarChoice sc;
  size_t samples = 25;
  size_t char_seq_samples = 64;
  uint64_t seed = 0;
  bool inject_bug = false;
  bool json_flag = false;

  auto add_scalar = [&](CLI::App* cmd) {
    cmd->add_option("--scalar", sc.tag, "scalar backend: rational | complex | cyclotomic:N");
    cmd->add_option("--tol", sc.tol, "comparison tolerance for the complex backend");
  };

  auto* b = app.add_subcommand("build", "construct an algebra and emit its JSON");
  b->add_option("--family", family, "A | B | model1 | model2")->required();
  b->add_option("--n", n, "even-part dimension (model1: total dimension)")->required();
  b->add_option("--params", params, "parameter JSON (inline or file path)");
  b->add_option("--out", out, "output path (default stdout)");
  add_scalar(b);

  auto* c = app.add_subcommand("check", "run the graded identity checks on an algebra file");
  c->add_option("file", algebra_file, "algebra JSON file")->required();
  c->add_option("--tol", sc.tol, "comparison tolerance for the complex backend");

  auto* inv = app.add_subcommand("invariants", "compute the invariant report of an algebra file");
  inv->add_option("file", algebra_file, "algebra JSON file")->required();
  inv->add_option("--samples", char_seq_samples, "candidate samples for the characteristic sequence");
  inv->add_option("--seed", seed, "random seed");
  inv->add_option("--tol", sc.tol, "comparison tolerance for the complex backend");
  inv->add_option("--out", out, "output path (default stdout)");

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two parameter files");
  iso->add_option("--family", family, "A | B")->required();
  iso->add_option("--n", n, "even-part dimension")->required();
  iso->add_option("--left", left, "left parameter JSON (inline or file)")->required();
  iso->add_option("--right", right, "right parameter JSON (inline or file)")->required();
  iso->add_option("--witness", witness_out, "write the witness JSON here");
  add_scalar(iso);

  auto* canon = app.add_subcommand("canon", "canonicalize a parameter vector");
  canon->add_option("--family", family, "A | B")->required();
  canon->add_option("--n", n, "even-part dimension")->required();
  canon->add_option("--params", params, "parameter JSON (inline or file)")->required();
  canon->add_option("--tol", sc.tol, "comparison tolerance");
  canon->add_option("--out", out, "output path (default stdout)");

  auto* enu = app.add_subcommand("enumerate", "list the canonical descriptors");
  enu->add_option("--family", family, "A | B")->required();
  enu->add_option("--n", n, "even-part dimension")->required();
  enu->add_option("--out", out, "output path (default stdout)");

  auto* vc = app.add_subcommand("verify-classification",
                                "run the full verification pipeline at desk scale");
  vc->add_option("--family", family, "A | B | both (default both)");
  vc->add_option("--n", n_range, "n or a..b range, e.g. 5 or 3..8")->required();
  vc->add_option("--samples", samples, "random instances per (family, n)");
  vc->add_option("--seed", seed, "random seed");
  vc->add_option("--tol", sc.tol, "floating tolerance");
  vc->add_flag("--json", json_flag, "machine-readable output (reports are JSON already)");
  vc->add_flag("--inject-bug", inject_bug,
               "negative control: tamper one structure constant and expect failure");
  vc->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (b->parsed()) return cmd_build(family, n, params, sc, out);
    if (c->parsed()) return cmd_check(algebra_file, sc.tol);
    if (inv->parsed()) return cmd_invariants(algebra_file, char_seq_samples, seed, sc.tol, out);
    if (iso->parsed()) return cmd_iso(family, n, left, right, witness_out, sc);
    if (canon->parsed()) return cmd_canon(family, n, params, sc.tol, out);
    if (enu->parsed()) return cmd_enumerate(family, n, out);
    if (vc->parsed())
      return cmd_verify_classification(family, n_range, samples, seed, sc.tol, inject_bug, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
