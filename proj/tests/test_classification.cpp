#include "leibniz/classification.hpp"
#include "leibniz/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace leibniz;

namespace {

using CF = ComplexField;
using RF = RationalField;
using C = std::complex<double>;

std::vector<C> to_complex_vec(const std::vector<Rational>& v) {
  std::vector<C> out;
  for (const auto& x : v) out.emplace_back(static_cast<double>(x), 0.0);
  return out;
}

size_t group_count(const std::vector<CanonicalDescriptor>& ds) {
  std::set<std::string> labels;
  for (const auto& d : ds) labels.insert(d.case_label);
  return labels.size();
}

TEST(Descriptors, GroupCountsMatchTheClassification) {
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::A, 5)), 5u);
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::A, 7)), 5u);
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::A, 6)), 3u);
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::A, 8)), 3u);
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::B, 4)), 2u);
  EXPECT_EQ(group_count(enumerate_descriptors(FamilyTag::B, 7)), 2u);
}

TEST(Descriptors, PatternsInstantiate) {
  RF f;
  for (const auto& d : enumerate_descriptors(FamilyTag::A, 5)) {
    std::vector<Rational> values(d.free_positions().size(), Rational(2));
    const auto flat = instantiate_descriptor(d, values, f);
    EXPECT_EQ(flat.size(), FamilyAParams<RF>::beta_count(5) + 2);
    (void)build_family_A(FamilyAParams<RF>::from_flat(5, flat), f);
  }
  for (const auto& d : enumerate_descriptors(FamilyTag::B, 5)) {
    std::vector<Rational> values(d.free_positions().size(), Rational(2));
    const auto flat = instantiate_descriptor(d, values, f);
    (void)build_family_B(FamilyBParams<RF>::from_flat(5, flat), f);
  }
}

TEST(RootsOfUnity, DefiningIdentities) {
  CF f;
  for (long t : {1L, 2L, 3L, 5L, 7L}) {
    EXPECT_TRUE(f.eq(RootOfUnity{0, t}.value(f), f.one()));
    for (long m = 0; m < t; ++m) {
      const auto s = RootOfUnity{m, t}.value(f);
      EXPECT_TRUE(f.eq(elem_pow(f, s, t), f.one())) << "m=" << m << " t=" << t;
    }
  }
  // Numeric anchor: the fifth root at m=1 is cos(2pi/5) + i sin(2pi/5), and
  // its fifth power returns to 1.
  const auto s15 = RootOfUnity{1, 5}.value(f);
  EXPECT_NEAR(s15.real(), std::cos(2 * M_PI / 5), 1e-12);
  EXPECT_NEAR(s15.imag(), std::sin(2 * M_PI / 5), 1e-12);
  EXPECT_TRUE(f.eq(elem_pow(f, s15, 5), f.one()));

  RF rf;
  EXPECT_TRUE(rf.root_of_unity(0, 4).has_value());
  EXPECT_TRUE(rf.root_of_unity(2, 4).has_value());
  EXPECT_FALSE(rf.root_of_unity(1, 4).has_value());
}

TEST(VOperator, PrintedPatterns) {
  CF f;
  // V^1 with m = 0 keeps the tail: (0,...,0,1,a_{j+1},...,a_k).
  const std::vector<C> alpha{{2, 0}, {3, 0}, {5, 0}, {7, 0}};
  const auto v1 = v_operator(1, 2, 4, alpha, 0, 1, f);
  EXPECT_TRUE(f.eq(v1[0], f.zero()));
  EXPECT_TRUE(f.eq(v1[1], f.one()));
  EXPECT_TRUE(f.eq(v1[2], {5, 0}));
  EXPECT_TRUE(f.eq(v1[3], {7, 0}));
  // j = k+1 gives the zero vector for every kind.
  for (int kind : {0, 1, 2})
    EXPECT_TRUE(vec_is_zero(v_operator(kind, 5, 4, alpha, 1, 1, f), f));
  // V^2 scales entry i by S_{m,2j+1}^{2i+1}.
  const std::vector<C> a2{{1, 0}, {1, 0}};
  const auto v2 = v_operator(2, 1, 2, a2, 1, 1, f);
  const auto s = *f.root_of_unity(1, 3);
  EXPECT_TRUE(f.eq(v2[1], elem_pow(f, s, 5)));
  // V^0 with delta = -1: slot 2 factor is delta * (delta^2)^{1/1} * S_{0,1}^2 = -1.
  const auto v0 = v_operator(0, 1, 2, a2, 0, -1, f);
  EXPECT_TRUE(f.eq(v0[1], C(-1, 0)));
}

TEST(VOperator, DeltaFactorsExplicit) {
  CF f;
  // kind 0, j = 2, delta = -1: slot 3 has delta^3 = -1, so the factor is
  // (-1) * e^{i pi / 2} * S_{m,2}^3.
  const auto v = v_operator(0, 2, 3, {{1, 0}, {1, 0}, {1, 0}}, 0, -1, f);
  EXPECT_TRUE(f.eq(v[1], f.one()));
  EXPECT_TRUE(f.eq(v[2], C(-1, 0) * C(0, 1)));
}

TEST(WOperator, NormalizesTheSecondEntry) {
  CF f;
  // Boundary: a leading-1 vector with zero tail is unchanged.
  const Vec<CF> flat{{0, 0}, {1, 0}, {0, 0}};
  EXPECT_EQ(w_operator(2, 3, flat, f), flat);
  // W_{1,3}(1, a, b) renormalizes position 2 to 1 and rescales the tail.
  const Vec<CF> v{{1, 0}, {4, 0}, {8, 0}};
  const auto w = w_operator(1, 3, v, f);
  EXPECT_TRUE(f.eq(w[0], f.one()));
  EXPECT_TRUE(f.eq(w[1], f.one()));
  EXPECT_TRUE(f.eq(w[2], C(0.5, 0)));  // 8 * (1/4)^2
  // Root branches rotate the tail.
  const Vec<CF> v2{{1, 0}, {0, 0}, {8, 0}};
  const auto w2 = w_operator(2, 3, v2, f, 1);
  EXPECT_TRUE(f.eq(w2[2], f.one()));
  EXPECT_TRUE(f.is_zero(w2[1]));
  // No leading 1: rejected.
  const Vec<CF> zero{{0, 0}, {0, 0}, {0, 0}};
  EXPECT_THROW((void)w_operator(1, 3, zero, f), std::invalid_argument);
  const Vec<CF> no_one{{2, 0}, {1, 0}, {0, 0}};
  EXPECT_THROW((void)w_operator(1, 3, no_one, f), std::invalid_argument);
}

TEST(Canonicalize, GammaNormalizationPicksPositiveBranch) {
  CF f;
  // (gamma, beta4, beta5, beta) = (9, 3, 0, 0) at n = 5.
  const auto res = canonicalize(FamilyTag::A, 5, to_complex_vec({9, 3, 0, 0}), f);
  EXPECT_EQ(res.descriptor.case_label, "1.1");
  ASSERT_EQ(res.representative.size(), 4u);
  EXPECT_TRUE(f.eq(res.representative[0], f.one()));
  EXPECT_TRUE(f.eq(res.representative[1], f.one()));  // 3/sqrt(9), positive branch
  EXPECT_TRUE(f.is_zero(res.representative[2]));
  EXPECT_TRUE(f.is_zero(res.representative[3]));
  EXPECT_TRUE(res.verified);
}

TEST(Canonicalize, AllZeroAndDegenerateMiddle) {
  CF f;
  const auto zero = canonicalize(FamilyTag::A, 5, to_complex_vec({0, 0, 0, 0}), f);
  EXPECT_EQ(zero.descriptor.case_label, "2.2.2");
  EXPECT_TRUE(f.eq(zero.witness.a1, f.one()));
  EXPECT_TRUE(f.eq(zero.witness.b_top, f.one()));

  // gamma - 4 beta_{q+1}^2 = 0: the trailing beta joins the normalized block.
  const auto res =
      canonicalize(FamilyTag::A, 5, to_complex_vec({1, Rational(1, 2), 2, 5}), f);
  EXPECT_EQ(res.descriptor.case_label, "1.2");
  EXPECT_EQ(res.descriptor.j, 1);
  EXPECT_TRUE(f.eq(res.representative[0], f.one()));
  EXPECT_TRUE(f.eq(res.representative[1], C(0.5, 0)));
  EXPECT_TRUE(f.eq(res.representative[2], f.one()));
  EXPECT_TRUE(f.eq(res.representative[3], C(1.25, 0)));
}

TEST(Canonicalize, CaseLabelsFollowTheDecisionTree) {
  CF f;
  EXPECT_EQ(canonicalize(FamilyTag::A, 5, to_complex_vec({0, 2, 3, 1}), f).descriptor.case_label,
            "2.1");
  EXPECT_EQ(canonicalize(FamilyTag::A, 5, to_complex_vec({0, 0, 3, 1}), f).descriptor.case_label,
            "2.2.1");
  EXPECT_EQ(canonicalize(FamilyTag::A, 6, to_complex_vec({4, 1, 2, 3}), f).descriptor.case_label,
            "1");
  EXPECT_EQ(canonicalize(FamilyTag::A, 6, to_complex_vec({0, 1, 2, 3}), f).descriptor.case_label,
            "2");
  EXPECT_EQ(canonicalize(FamilyTag::A, 6, to_complex_vec({0, 0, 0, 0}), f).descriptor.case_label,
            "0");
  EXPECT_EQ(canonicalize(FamilyTag::B, 5, to_complex_vec({3, 4}), f).descriptor.case_label, "B.1");
  EXPECT_EQ(canonicalize(FamilyTag::B, 5, to_complex_vec({0, 0}), f).descriptor.case_label, "B.0");
}

TEST(Canonicalize, RepresentativeMatchesDescriptorPattern) {
  CF f;
  RF rf;
  SeededRng rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng.int_in(4, 7));
    const auto p = random_family_a_params(n, rng, rf);
    std::vector<C> flat;
    for (const auto& x : p.flat()) flat.emplace_back(static_cast<double>(x), 0);
    const auto res = canonicalize(FamilyTag::A, n, flat, f);
    EXPECT_TRUE(res.verified);
    ASSERT_EQ(res.representative.size(), res.descriptor.pattern.size());
    for (size_t i = 0; i < res.representative.size(); ++i) {
      if (!res.descriptor.pattern[i].fixed) continue;
      const double expect = static_cast<double>(res.descriptor.pattern[i].value);
      EXPECT_NEAR(res.representative[i].real(), expect, 1e-7) << "slot " << i;
      EXPECT_NEAR(res.representative[i].imag(), 0.0, 1e-7) << "slot " << i;
    }
  }
}

TEST(Canonicalize, IdempotentOnRepresentatives) {
  CF f;
  RF rf;
  SeededRng rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.int_in(4, 6));
    const FamilyTag fam = rng.coin() ? FamilyTag::A : FamilyTag::B;
    std::vector<C> flat;
    if (fam == FamilyTag::A)
      for (const auto& x : random_family_a_params(n, rng, rf).flat())
        flat.emplace_back(static_cast<double>(x), 0);
    else
      for (const auto& x : random_family_b_params(n, rng, rf).flat())
        flat.emplace_back(static_cast<double>(x), 0);
    const auto once = canonicalize(fam, n, flat, f);
    const auto twice = canonicalize(fam, n, once.representative, f);
    EXPECT_EQ(once.descriptor.id(), twice.descriptor.id());
    for (size_t i = 0; i < once.representative.size(); ++i)
      EXPECT_LT(std::abs(once.representative[i] - twice.representative[i]), 1e-9);
  }
}

TEST(Canonicalize, OrbitSoundness) {
  CF f;
  RF rf;
  SeededRng rng(107);
  const std::vector<Rational> a1_pool{Rational(1), Rational(-1), Rational(2), Rational(1, 2),
                                      Rational(3, 2), Rational(-2)};
  for (int trial = 0; trial < 60; ++trial) {
    const int n = static_cast<int>(rng.int_in(4, 6));
    const FamilyTag fam = rng.coin() ? FamilyTag::A : FamilyTag::B;
    std::vector<Rational> flat_r;
    IsoWitness<RF> w;
    w.family = fam;
    w.n = n;
    w.a1 = a1_pool[static_cast<size_t>(rng.int_in(0, 5))];
    w.a_top = rng.rational(2, 2);
    w.b_top = rng.nonzero_rational(3, 2);
    w.b_prev = Rational(0);
    std::vector<Rational> moved_r;
    if (fam == FamilyTag::A) {
      const auto p = random_family_a_params(n, rng, rf);
      flat_r = p.flat();
      moved_r = induced_params(p, w, rf).flat();
    } else {
      const auto p = random_family_b_params(n, rng, rf);
      flat_r = p.flat();
      moved_r = induced_params(p, w, rf).flat();
    }
    const auto res1 = canonicalize(fam, n, to_complex_vec(flat_r), f);
    const auto res2 = canonicalize(fam, n, to_complex_vec(moved_r), f);
    EXPECT_EQ(res1.descriptor.id(), res2.descriptor.id()) << "trial " << trial;
    ASSERT_EQ(res1.representative.size(), res2.representative.size());
    for (size_t i = 0; i < res1.representative.size(); ++i)
      EXPECT_LT(std::abs(res1.representative[i] - res2.representative[i]), 1e-9)
          << "trial " << trial << " slot " << i;
  }
}

TEST(Canonicalize, CoverageOfEnumeratedDescriptors) {
  CF f;
  RF rf;
  SeededRng rng(109);
  for (int n : {4, 5, 6, 7, 8}) {
    std::set<std::string> ids;
    for (const auto& d : enumerate_descriptors(FamilyTag::A, n)) ids.insert(d.id());
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_family_a_params(n, rng, rf);
      const auto res = canonicalize(FamilyTag::A, n, to_complex_vec(p.flat()), f);
      EXPECT_TRUE(ids.count(res.descriptor.id()))
          << "orphan descriptor " << res.descriptor.id();
    }
    std::set<std::string> ids_b;
    for (const auto& d : enumerate_descriptors(FamilyTag::B, n)) ids_b.insert(d.id());
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_family_b_params(n, rng, rf);
      const auto res = canonicalize(FamilyTag::B, n, to_complex_vec(p.flat()), f);
      EXPECT_TRUE(ids_b.count(res.descriptor.id()));
    }
  }
}

TEST(Canonicalize, RationalBackendRefusesIrrationalRoots) {
  RF rf;
  std::vector<Rational> flat{Rational(2), Rational(0), Rational(0), Rational(0)};
  try {
    (void)canonicalize(FamilyTag::A, 5, flat, rf);
    FAIL() << "expected a domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("square root"), std::string::npos);
  }
  // Perfect squares stay inside the rationals.
  const auto ok = canonicalize(FamilyTag::A, 5, {Rational(4), Rational(0), Rational(0), Rational(0)}, rf);
  EXPECT_EQ(ok.descriptor.case_label, "1.1");
  EXPECT_EQ(ok.representative[0], Rational(1));
}

TEST(Descriptors, MinimalConductorRealizesEveryBranch) {
  for (auto [family, n] : std::vector<std::pair<FamilyTag, int>>{
           {FamilyTag::A, 5}, {FamilyTag::A, 6}, {FamilyTag::B, 5}}) {
    const unsigned cond = minimal_conductor(family, n);
    CyclotomicField f(cond);
    for (const auto& d : enumerate_descriptors(family, n))
      for (long m = 0; m < d.ambiguity_order; ++m) {
        const RootOfUnity root{m, d.ambiguity_order};
        EXPECT_NO_THROW((void)root.value(f));
      }
  }
  // A, n = 5: branch orders are {1, 2, 4}, so conductor 4.
  EXPECT_EQ(minimal_conductor(FamilyTag::A, 5), 4u);
}

TEST(PairwiseDistinct, GaussianGridNoCollisions) {
  CyclotomicField f(4);
  std::vector<CyclotomicField::Elem> grid{f.from_int(0), f.from_int(1), f.from_int(-1),
                                          f.from_int(2), f.zeta_power(1)};
  const auto rep_b = pairwise_distinct(FamilyTag::B, 4, grid, f);
  EXPECT_TRUE(rep_b.pass());
  EXPECT_GT(rep_b.class_count, 2u);
  const auto rep_a = pairwise_distinct(FamilyTag::A, 5, grid, f);
  EXPECT_TRUE(rep_a.pass()) << rep_a.collisions.size() << " collisions, e.g. "
                            << (rep_a.collisions.empty() ? ""
                                                         : rep_a.collisions[0].left + " vs " +
                                                               rep_a.collisions[0].right);
  EXPECT_GT(rep_a.pairs_checked, 20u);
}

// The condition solver and the canonicalizer are independent routes to the
// same equivalence; on random pairs (seeded so both verdicts occur) they
// must agree: solvable iff the canonical representatives coincide.
TEST(CrossValidation, SolverAgreesWithCanonicalizer) {
  RF rf;
  CF cf;
  SeededRng rng(131);
  int yes_seen = 0, no_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = static_cast<int>(rng.int_in(4, 6));
    const FamilyTag fam = rng.coin() ? FamilyTag::A : FamilyTag::B;
    std::vector<Rational> p = fam == FamilyTag::A ? random_family_a_params(n, rng, rf).flat()
                                                  : random_family_b_params(n, rng, rf).flat();
    std::vector<Rational> q;
    if (rng.coin()) {
      IsoWitness<RF> w;
      w.family = fam;
      w.n = n;
      w.a1 = rng.nonzero_rational(2, 2);
      w.a_top = rng.rational(2, 2);
      w.b_top = rng.nonzero_rational(2, 2);
      w.b_prev = rf.zero();
      q = fam == FamilyTag::A
              ? induced_params(FamilyAParams<RF>::from_flat(n, p), w, rf).flat()
              : induced_params(FamilyBParams<RF>::from_flat(n, p), w, rf).flat();
    } else {
      q = fam == FamilyTag::A ? random_family_a_params(n, rng, rf).flat()
                              : random_family_b_params(n, rng, rf).flat();
    }
    IsoConditionSystem<RF> sys;
    sys.family = fam;
    sys.n = n;
    sys.source = p;
    sys.target = q;
    const bool solver = iso_solvable(sys, rf).isomorphic;

    const auto canon_p = canonicalize(fam, n, to_complex_vec(p), cf);
    const auto canon_q = canonicalize(fam, n, to_complex_vec(q), cf);
    bool same = canon_p.descriptor.id() == canon_q.descriptor.id();
    for (size_t i = 0; i < canon_p.representative.size() && same; ++i) {
      const auto a = canon_p.representative[i], b = canon_q.representative[i];
      same = std::abs(a - b) <= 1e-6 * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
    EXPECT_EQ(solver, same) << "family " << family_name(fam) << " n=" << n << " trial "
                            << trial;
    (solver ? yes_seen : no_seen)++;
  }
  EXPECT_GT(yes_seen, 20);
  EXPECT_GT(no_seen, 20);
}

}  // namespace
