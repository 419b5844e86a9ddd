#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "circulant/circulant.hpp"
#include "circulant/gtsys.hpp"
#include "support.hpp"

using namespace circulant;
using testsupport::parse_display;

namespace {

const std::string kLetters = "xyztuv";

const char* kDet3 = "x^3+y^3+z^3-3xyz";
const char* kPer3 = "x^3+y^3+z^3+3xyz";
const char* kDet4 = "x^4-y^4+z^4-t^4-2x^2z^2+2y^2t^2-4x^2yt+4xy^2z-4yz^2t+4xzt^2";
const char* kPer4 = "x^4+y^4+z^4+t^4+2x^2z^2+2y^2t^2+4x^2yt+4xy^2z+4yz^2t+4xzt^2";
const char* kDet5 =
    "x^5+y^5+z^5+t^5+u^5-5x^3yu-5x^3zt-5xy^3z-5y^3tu -5xz^3u"
    "-5yz^3t-5xyt^3-5zy^3u-5xtu^3-5yzu^3+5x^2y^2t+5x^2yz^2 +5x^2zu^2"
    "+5x^2t^2u+5xy^2u^2+5xz^2t^2+5y^2z^2u +5y^2tu^2+5yt^2u^2+5z^2tu^2-5xyztu";
// The reference display lists -5zy^3u and +5y^2tu^2. Their index sums are 9
// and 13, so the congruence rules both out; the fixture carries -5zt^3u and
// +5y^2zt^2 in their place.
const char* kDet5Printed = "-5zy^3u+5y^2tu^2";
const char* kDet5Corrected = "-5zt^3u+5y^2zt^2";

const char* kPer5 =
    "x^5+y^5+z^5+t^5+u^5+ 5 t u^3 x + 5 t^2 u x^2 + 5 t^2 u^2 y + 5 t^3 x y + 5 u x^3 y"
    "+ 5 u^2 x y^2 + 5 t x^2 y^2 + 5 t u y^3  + 5 t^3 u z + 5 u^2 x^2 z + 5 t x^3 z + 5 u^3 y z + 15 t u x y z"
    "+ 5 t^2 y^2 z + 5 x y^3 z + 5 t u^2 z^2 + 5 t^2 x z^2 + 5 x^2 y z^2 + 5 u y^2 z^2 + 5 u x z^3 + 5 t y z^3";

const char* kDet6 =
    "x^6-y^6+z^6-t^6+u^6-v^6 + 6 t^4 u z + 6 t^4 v y + 3 t^4 x^2 - 6 t^3 u^2 y - 12 t^3 u v x - 2 t^3 v^3 "
    "- 6 t^3 v z^2 - 12 t^3 x y z - 2 t^3 y^3 + 6 t^2 u^3 x + 9 t^2 u^2 v^2 - 9 t^2 u^2 z^2 + 18 t^2 u x "
    "y^2 + 18 t^2 v^2 x z - 9 t^2 v^2 y^2 - 3 t^2 x^4 + 6 t^2 x z^3 + 9 t^2 y^2 z^2 - 6 t u^4 v + 12 t "
    "u^3 y z - 18 t u^2 x^2 y - 12 t u v^3 z + 12 t u v x^3 + 12 t u v z^3 - 12 t u y^3 z + 6 t v^4 y - 6 "
    "t v^3 x^2 - 18 t v x^2 z^2 + 6 t v y^4 - 6 t x^2 y^3 + 12 t x^3 y z - 6 t y z^4 - 6 u^4 x z - 3 u^4 "
    "y^2 + 6 u^3 v^2 z + 12 u^3 v x y + 2 u^3 x^3 + 2 u^3 z^3 - 6 u^2 v^3 y - 9 u^2 v^2 x^2 - 18 u^2 v y "
    "z^2 + 9 u^2 x^2 z^2 + 3 u^2 y^4 + 6 u v^4 x + 18 u v^2 y^2 z - 12 u v x y^3 - 6 u x^4 z + 6 u x^3 "
    "y^2 - 6 u x z^4 + 6 u y^2 z^3 + 3 v^4 z^2 - 12 v^3 x y z - 2 v^3 y^3 + 6 v^2 x^3 z + 9 v^2 x^2 y^2 - "
    "3 v^2 z^4 - 6 v x^4 y + 12 v x y z^3 - 6 v y^3 z^2 + 2 x^3 z^3 - 9 x^2 y^2 z^2 + 6 x y^4 z ";
const char* kPer6 =
    "x^6+y^6+z^6+t^6+u^6+v^6 + 6 t^4 u z + 6 t^4 v y + 3 t^4 x^2 + 6 t^3 u^2 y + 12 t^3 u v x + 2 t^3 v^3 "
    "+ 6 t^3 v z^2 + 12 t^3 x y z + 2 t^3 y^3 + 6 t^2 u^3 x + 9 t^2 u^2 v^2 + 9 t^2 u^2 z^2 + 24 t^2 u v "
    "y z + 12 t^2 u x^2 z + 18 t^2 u x y^2 + 18 t^2 v^2 x z + 9 t^2 v^2 y^2 + 12 t^2 v x^2 y + 3 t^2 x^4 "
    "+ 6 t^2 x z^3 + 9 t^2 y^2 z^2 + 6 t u^4 v + 12 t u^3 y z + 24 t u^2 v x z + 12 t u^2 v y^2 + 18 t "
    "u^2 x^2 y + 12 t u v^3 z + 24 t u v^2 x y + 12 t u v x^3 + 12 t u v z^3 + 24 t u x y z^2 + 12 t u "
    "y^3 z+ 6 t v^4 y + 6 t v^3 x^2 + 12 t v^2 y z^2 + 18 t v x^2 z^2 + 24 t v x y^2 z + 6 t v y^4 + 6 t "
    "x^2 y^3 + 12 t x^3 y z + 6 t y z^4 + 6 u^4 x z + 3 u^4 y^2 + 6 u^3 v^2 z + 12 u^3 v x y + 2 u^3 x^3 "
    "+ 2 u^3 z^3 + 6 u^2 v^3 y + 9 u^2 v^2 x^2 + 18 u^2 v y z^2 + 9 u^2 x^2 z^2 + 12 u^2 x y^2 z + 3 u^2 "
    "y^4 + 6 u v^4 x + 12 u v^2 x z^2 + 18 u v^2 y^2 z + 24 u v x^2 y z + 12 u v x y^3 + 6 u x^4 z + 6 u "
    "x^3 y^2 + 6 u x z^4 + 6 u y^2 z^3 + 3 v^4 z^2 + 12 v^3 x y z + 2 v^3 y^3 + 6 v^2 x^3 z + 9 v^2 x^2 "
    "y^2 + 3 v^2 z^4 + 6 v x^4 y + 12 v x y z^3 + 6 v y^3 z^2 + 2 x^3 z^3 + 9 x^2 y^2 z^2 + 6 x y^4 z ";

std::set<std::vector<std::uint32_t>> support_of(const ExpansionReport& r) {
  std::set<std::vector<std::uint32_t>> s;
  for (const auto& t : r.terms) s.insert(t.multiset.values());
  return s;
}

}  // namespace

TEST(DetExpand, SmallOrders) {
  const auto d1 = det_expand(1);
  EXPECT_EQ(d1.term_count, 1u);
  EXPECT_EQ(d1.terms[0].coeff, 1);

  const auto d2 = det_expand(2);
  EXPECT_EQ(testsupport::as_map(d2), (testsupport::Poly{{{0, 0}, 1}, {{1, 1}, -1}}));

  const auto d3 = det_expand(3);
  EXPECT_EQ(d3.term_count, 4u);
  EXPECT_EQ(d3.coefficient(MultisetIndex({0, 1, 2})), -3);
  EXPECT_EQ(det_expand(6).term_count, 68u);
  EXPECT_THROW(det_expand(0), InvalidInput);
}

TEST(DetExpand, MatchesDisplayedPolynomials) {
  EXPECT_EQ(testsupport::as_map(det_expand(3)), parse_display(kDet3, kLetters));
  EXPECT_EQ(testsupport::as_map(det_expand(4)), parse_display(kDet4, kLetters));
  auto det5 = parse_display(kDet5, kLetters);
  for (const auto& [m, c] : parse_display(kDet5Printed, kLetters)) {
    EXPECT_NE(std::accumulate(m.begin(), m.end(), 0u) % 5, 0u);
    EXPECT_EQ(det5.at(m), c);
    det5.erase(m);
  }
  for (const auto& [m, c] : parse_display(kDet5Corrected, kLetters)) det5[m] = c;
  EXPECT_EQ(testsupport::as_map(det_expand(5)), det5);
  EXPECT_EQ(det_expand(5).coefficient(MultisetIndex({0, 1, 2, 3, 4})), -5);
  EXPECT_EQ(testsupport::as_map(det_expand(6)), parse_display(kDet6, kLetters));
}

TEST(PerExpand, MatchesDisplayedPolynomials) {
  EXPECT_EQ(testsupport::as_map(per_expand(3)), parse_display(kPer3, kLetters));
  EXPECT_EQ(testsupport::as_map(per_expand(4)), parse_display(kPer4, kLetters));
  EXPECT_EQ(testsupport::as_map(per_expand(5)), parse_display(kPer5, kLetters));
  EXPECT_EQ(per_expand(5).coefficient(MultisetIndex({0, 1, 2, 3, 4})), 15);
  EXPECT_EQ(testsupport::as_map(per_expand(6)), parse_display(kPer6, kLetters));
  EXPECT_THROW(per_expand(kMaxPermanentOrder + 1), BudgetExceeded);
}

TEST(DetExpand, AgreesWithLeibnizExpansion) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(det_expand(n), det_brute_force(n)) << n;
}

TEST(DetExpand, AgreesWithFloatingPointDeterminant) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto rep = det_expand(n);
    for (int t = 0; t < 5; ++t) {
      const auto x = testsupport::random_point(n, rng);
      const double want = testsupport::lu_det(testsupport::circulant_matrix(x));
      const long double got = testsupport::evaluate(rep, x);
      EXPECT_NEAR(static_cast<double>(got), want, 1e-9 * std::max(1.0, std::abs(want))) << n;
    }
  }
}

TEST(PerExpand, AgreesWithFloatingPointPermanent) {
  std::mt19937_64 rng(43);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto rep = per_expand(n);
    const auto x = testsupport::random_point(n, rng);
    const double want = testsupport::permanent(testsupport::circulant_matrix(x));
    EXPECT_NEAR(static_cast<double>(testsupport::evaluate(rep, x)), want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST(DetExpand, CoefficientSums) {
  for (std::size_t n = 1; n <= 9; ++n) {
    BigScalar sum = 0;
    for (const auto& t : det_expand(n).terms) sum += t.coeff;
    EXPECT_EQ(sum, n == 1 ? 1 : 0) << n;
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    BigScalar sum = 0;
    for (const auto& t : per_expand(n).terms) sum += t.coeff;
    EXPECT_EQ(sum, factorial(static_cast<unsigned>(n))) << n;
  }
}

TEST(DetExpand, SupportSatisfiesCongruence) {
  for (std::size_t n = 1; n <= 10; ++n)
    for (const auto& t : det_expand(n).terms) EXPECT_TRUE(support_congruence_check(n, t.multiset)) << n;
}

TEST(DetExpand, PrimeOrdersKeepEveryPermanentTerm) {
  for (std::size_t n : {2, 3, 5, 7, 11}) {
    const auto det = support_of(det_expand(n));
    std::set<std::vector<std::uint32_t>> per;
    for (const auto& m : per_support(n)) per.insert(m.values());
    EXPECT_EQ(det, per) << n;
  }
}

TEST(DetExpand, BudgetIsEnforced) {
  EXPECT_THROW(det_expand(13), BudgetExceeded);
  EXPECT_THROW(det_expand(6, 100), BudgetExceeded);
  EXPECT_NO_THROW(det_expand(6, 462));
}

TEST(DetExpandGeneral, ReducesToGenericCase) {
  for (std::size_t n = 2; n <= 7; ++n) EXPECT_EQ(det_expand_general(n, identity_alpha(n)), det_expand(n));
  EXPECT_EQ(det_expand_general(3, {0, 1, 2}).term_count, 4u);
}

TEST(DetExpandGeneral, SupportIsInvariant) {
  const auto rep = det_expand_general(6, {0, 1, 3});
  const auto action = make_action(6, std::vector<std::uint32_t>{0, 1, 3});
  const auto inv = invariant_monomials(action);
  std::set<std::vector<std::uint32_t>> invariant;
  for (const auto& e : inv) invariant.insert(multiset_of(e).values());
  for (const auto& t : rep.terms) EXPECT_TRUE(invariant.count(t.multiset.values())) << t.multiset.to_string();
}

TEST(DetExpandGeneral, RejectsMalformedAlpha) {
  EXPECT_THROW(det_expand_general(6, {0, 2, 1}), InvalidInput);
  EXPECT_THROW(det_expand_general(6, {0, 1, 7}), InvalidInput);
  EXPECT_THROW(det_expand_general(6, {0, 1, 6}), InvalidInput);
  EXPECT_THROW(det_expand_general(0, {0}), InvalidInput);
}

TEST(PerSupport, MatchesPlainEnumeration) {
  for (std::uint32_t n = 1; n <= 9; ++n) {
    const auto brute = testsupport::brute_per_support(n);
    const auto fast = per_support(n);
    ASSERT_EQ(fast.size(), brute.size()) << n;
    for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i].values(), brute[i]);
    EXPECT_EQ(count_per_support(n), brute.size());
  }
}

TEST(PerSupport, ClosedFormula) {
  const std::vector<int> expected{1, 2, 4, 10, 26, 80, 246, 810, 2704, 9252};
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(p_count_formula(n), expected[n - 1]) << n;
  for (std::size_t n = 1; n <= 13; ++n) EXPECT_EQ(p_count_formula(n), count_per_support(n)) << n;
}

TEST(PerSupport, EqualsPermanentSupport) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::set<std::vector<std::uint32_t>> s;
    for (const auto& m : per_support(n)) s.insert(m.values());
    EXPECT_EQ(support_of(per_expand(n)), s);
  }
}

TEST(CoefficientOracle, AgreesWithExpansionExhaustively) {
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto rep = det_expand(n);
    for (const auto& m : per_support(n)) EXPECT_EQ(coefficient_oracle(n, m), rep.coefficient(m)) << m.to_string();
  }
}

TEST(CoefficientOracle, GeneralActions) {
  const std::vector<std::uint32_t> alpha{0, 1, 5};
  const auto rep = det_expand_general(6, alpha);
  for (const auto& t : rep.terms)
    EXPECT_EQ(coefficient_oracle_general(6, alpha, exponent_of(t.multiset, 3)), t.coeff);
  EXPECT_EQ(coefficient_oracle_general(6, alpha, ExponentVector({5, 1, 0})), 0);
}

TEST(CoefficientOracle, Errors) {
  EXPECT_THROW(coefficient_oracle(3, MultisetIndex({0, 1})), InvalidInput);
  EXPECT_THROW(coefficient_oracle(3, MultisetIndex({0, 1, 3})), InvalidInput);
  EXPECT_THROW(coefficient_oracle(17, MultisetIndex(std::vector<std::uint32_t>(17, 0))), BudgetExceeded);
}

TEST(CoefficientOracle, KnownZeroForTen) {
  EXPECT_EQ(coefficient_oracle(10, MultisetIndex({0, 0, 0, 0, 1, 1, 1, 3, 6, 8})), 0);
  EXPECT_EQ(coefficient_oracle(16, MultisetIndex(std::vector<std::uint32_t>(16, 3))), -1);
}

// The reference list prints c_{0,1,3,4,4,5}, whose index sum 17 is not a
// multiple of 6; the zero it stands for is c_{0,1,3,4,5,5}.
TEST(ZeroCoefficients, SixByDisplayedList) {
  EXPECT_FALSE(support_congruence_check(6, MultisetIndex({0, 1, 3, 4, 4, 5})));
  const std::set<std::vector<std::uint32_t>> listed{
      {0, 0, 1, 3, 3, 5}, {0, 0, 1, 2, 4, 5}, {0, 0, 2, 3, 3, 4}, {0, 1, 1, 2, 4, 4},
      {0, 1, 1, 2, 3, 5}, {0, 1, 2, 2, 3, 4}, {0, 1, 3, 4, 5, 5}, {0, 2, 3, 4, 4, 5},
      {0, 2, 2, 4, 5, 5}, {1, 2, 2, 3, 5, 5}, {1, 1, 3, 4, 4, 5}, {1, 2, 3, 3, 4, 5}};
  const auto det = det_expand(6);
  std::set<std::vector<std::uint32_t>> zeros;
  for (const auto& m : per_support(6))
    if (det.coefficient(m) == 0) zeros.insert(m.values());
  EXPECT_EQ(zeros, listed);
}

TEST(VanishingPredicate, ImpliesZeroCoefficient) {
  std::size_t hits = 0;
  for (std::size_t n = 5; n <= 10; ++n) {
    const auto det = det_expand(n);
    for (const auto& m : per_support(n)) {
      if (!vanishing_predicate(n, m)) continue;
      ++hits;
      EXPECT_EQ(det.coefficient(m), 0) << "N=" << n << ' ' << m.to_string();
    }
  }
  EXPECT_GT(hits, 0u);
  EXPECT_FALSE(vanishing_predicate(3, MultisetIndex({0, 1, 2})));
}

TEST(Witness, KnownInstances) {
  const auto w6 = theorem_witness(6);
  EXPECT_EQ(w6.multiset.values(), (std::vector<std::uint32_t>{0, 0, 1, 2, 4, 5}));
  const auto w10 = theorem_witness(10);
  EXPECT_EQ(w10.multiset.values(), (std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 3, 6, 8}));
  const auto w12 = theorem_witness(12);
  EXPECT_EQ(w12.params.n, 3);
  EXPECT_EQ(w12.params.m, 4);
  EXPECT_EQ(w12.multiset.values(), (std::vector<std::uint32_t>{0, 0, 0, 0, 0, 0, 0, 1, 1, 3, 9, 10}));
}

TEST(Witness, VanishesForEveryCompositeSplit) {
  for (std::size_t n = 2; n <= 16; ++n) {
    if (is_prime_power(n)) continue;
    const auto w = theorem_witness(n);
    EXPECT_TRUE(witness_params_valid(w.params)) << n;
    EXPECT_TRUE(support_congruence_check(n, w.multiset)) << n;
    EXPECT_TRUE(vanishing_predicate(n, w.multiset)) << n;
    EXPECT_EQ(coefficient_oracle(n, w.multiset), 0) << n;
  }
}

TEST(Witness, RejectsPrimePowers) {
  EXPECT_THROW(theorem_witness(8), PrimePowerInput);
  EXPECT_THROW(theorem_witness(7), PrimePowerInput);
  EXPECT_THROW(theorem_witness(1), PrimePowerInput);
  EXPECT_THROW(theorem_witness(0), InvalidInput);
  try {
    (void)theorem_witness(8);
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("PrimePowerInput"), std::string::npos);
  }
}

TEST(CompareDp, SmallTable) {
  const std::vector<std::pair<int, int>> dp{{1, 1}, {2, 2}, {4, 4}, {10, 10}, {26, 26}, {68, 80}};
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = compare_dp(n);
    EXPECT_EQ(r.d, dp[n - 1].first) << n;
    EXPECT_EQ(r.p, dp[n - 1].second) << n;
    EXPECT_TRUE(r.consistent) << n;
  }
  const auto r10 = compare_dp(10);
  EXPECT_EQ(r10.p, 9252);
  EXPECT_FALSE(r10.equal);
  EXPECT_FALSE(r10.prime_power);
}
