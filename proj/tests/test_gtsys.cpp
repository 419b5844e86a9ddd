#include <gtest/gtest.h>

#include <random>
#include <set>

#include "circulant/gtsys.hpp"

using namespace circulant;

namespace {

std::set<std::vector<std::uint32_t>> multisets(const std::vector<ExponentVector>& v) {
  std::set<std::vector<std::uint32_t>> s;
  for (const auto& e : v) s.insert(multiset_of(e).values());
  return s;
}

}  // namespace

TEST(GroupAction, Validation) {
  EXPECT_THROW(make_action(6, std::vector<std::int64_t>{0, 2, 4}), InvalidAction);
  EXPECT_THROW(make_action(2, std::vector<std::int64_t>{0, 1, 1}), InvalidAction);
  EXPECT_THROW(make_action(5, std::vector<std::int64_t>{0, 1}), InvalidAction);
  EXPECT_THROW(make_action(5, std::vector<std::int64_t>{0, 1}), InvalidInput);
  const auto a = make_action(5, std::vector<std::int64_t>{0, -1, 7});
  EXPECT_EQ(a.exponents, (std::vector<std::uint32_t>{0, 4, 2}));
  EXPECT_TRUE(a.invariant(ExponentVector({0, 1, 3}).view()));
  EXPECT_FALSE(a.invariant(ExponentVector({1, 1, 1}).view()));
}

TEST(Generators, TogliattiCubic) {
  const auto action = standard_action(3);
  const auto gens = invariant_monomials(action);
  EXPECT_EQ(multisets(gens), (std::set<std::vector<std::uint32_t>>{{0, 0, 0}, {0, 1, 2}, {1, 1, 1}, {2, 2, 2}}));
  const auto bound = togliatti_bound_check(action);
  EXPECT_EQ(bound.mu, 4);
  EXPECT_EQ(bound.bound, 4);
  EXPECT_TRUE(bound.ok);
}

TEST(Generators, CountMatchesEnumeration) {
  std::mt19937_64 rng(17);
  for (std::size_t d = 3; d <= 9; ++d) {
    for (std::size_t nv = 3; nv <= 5; ++nv) {
      std::uniform_int_distribution<std::int64_t> u(0, static_cast<std::int64_t>(d) - 1);
      for (int t = 0; t < 5; ++t) {
        std::vector<std::int64_t> alpha(nv);
        for (auto& a : alpha) a = u(rng);
        alpha[0] = 1;  // keeps the gcd condition
        const auto action = make_action(d, alpha);
        EXPECT_EQ(count_invariant_monomials(action), invariant_monomials(action).size());
      }
    }
  }
}

TEST(Generators, StandardActionCountIsPermanentCount) {
  for (std::size_t n = 3; n <= 10; ++n)
    EXPECT_EQ(count_invariant_monomials(standard_action(n)), p_count_formula(n)) << n;
}

TEST(Generators, BoundsHoldForStandardActions) {
  for (std::size_t n = 3; n <= 20; ++n) {
    const auto b = togliatti_bound_check(standard_action(n));
    EXPECT_TRUE(b.ok) << n;
    ASSERT_TRUE(b.formula_inequality.has_value());
    EXPECT_TRUE(*b.formula_inequality) << n;
  }
}

TEST(KernelWitness, VerifiedForStandardActions) {
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto w = wlp_kernel_witness(standard_action(n));
    EXPECT_TRUE(w.verified) << n;
    EXPECT_EQ(w.form.degree(), n - 1);
  }
  EXPECT_TRUE(wlp_kernel_witness(make_action(7, std::vector<std::int64_t>{0, 1, 3})).verified);
}

TEST(WlpRank, CubicExample) {
  const auto r = wlp_rank(standard_action(3));
  EXPECT_EQ(r.rank, 5u);
  EXPECT_EQ(r.source_dim, 6u);
  EXPECT_EQ(r.target_dim, 6u);
  EXPECT_FALSE(r.injective);
  EXPECT_TRUE(r.exact);
}

// The Schur complement rank mod p must agree with Bareiss elimination over Q
// wherever both run.
TEST(WlpRank, ModularMatchesBareiss) {
  const std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> cases{
      {3, {0, 1, 2}}, {4, {0, 1, 2, 3}}, {4, {0, 1, 3}},    {5, {0, 1, 2}},       {6, {0, 1, 5}},
      {6, {0, 2, 3}}, {7, {0, 1, 3}},    {8, {0, 1, 2}},    {5, {0, 1, 2, 3, 4}}, {9, {0, 2, 5}},
      {6, {1, 1, 1}}, {5, {0, 1, 1, 2}}, {7, {0, 1, 2, 4}}, {6, {0, 1, 2, 3}},
  };
  for (const auto& [d, alpha] : cases) {
    const auto action = make_action(d, alpha);
    const auto exact = detail::rank_by_bareiss(action);
    EXPECT_EQ(detail::schur_rank_mod_p(action, 2147483647ull, 0), exact.rank) << d;
    EXPECT_EQ(detail::schur_rank_mod_p(action, 1000003ull, 0), exact.rank) << d;
    if (exact.rank + 1 == exact.source_dim) {
      EXPECT_EQ(detail::schur_rank_mod_p(action, 2147483647ull, 1), exact.rank) << d;
    }
  }
}

TEST(WlpRank, LargeMapsUseCertificate) {
  const auto r = wlp_rank(standard_action(6), true);
  EXPECT_EQ(r.source_dim, 252u);
  EXPECT_EQ(r.rank, 251u);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.method, "modular+kernel-witness");
  const auto plain = wlp_rank(standard_action(6), false);
  EXPECT_EQ(plain.rank, 251u);
  EXPECT_FALSE(plain.exact);
  EXPECT_FALSE(plain.injective);
}

TEST(Minimality, CubicIsMinimal) {
  const auto rep = minimality_check(standard_action(3));
  EXPECT_EQ(rep.mu, 4u);
  EXPECT_TRUE(rep.minimal);
  EXPECT_TRUE(rep.wlp_witness_verified);
  EXPECT_EQ(rep.rank, 5u);
  EXPECT_TRUE(rep.missing_monomials.empty());
}

TEST(Minimality, SixMissesTheVanishingCoefficients) {
  const auto rep = minimality_check(standard_action(6));
  EXPECT_FALSE(rep.minimal);
  const std::set<std::vector<std::uint32_t>> listed{
      {0, 0, 1, 3, 3, 5}, {0, 0, 1, 2, 4, 5}, {0, 0, 2, 3, 3, 4}, {0, 1, 1, 2, 4, 4},
      {0, 1, 1, 2, 3, 5}, {0, 1, 2, 2, 3, 4}, {0, 1, 3, 4, 5, 5}, {0, 2, 3, 4, 4, 5},
      {0, 2, 2, 4, 5, 5}, {1, 2, 2, 3, 5, 5}, {1, 1, 3, 4, 4, 5}, {1, 2, 3, 3, 4, 5}};
  EXPECT_EQ(multisets(rep.missing_monomials), listed);
}

TEST(Minimality, RequiresSortedAlpha) {
  EXPECT_THROW(minimality_check(make_action(5, std::vector<std::int64_t>{0, 2, 1})), InvalidInput);
}

TEST(Minimality, DetSupportMatchesGeneratorsMinusMissing) {
  const auto action = make_action(6, std::vector<std::int64_t>{0, 1, 5});
  const auto rep = minimality_check(action);
  const auto det = det_expand_general(6, action.exponents);
  EXPECT_EQ(det.term_count, rep.mu - rep.missing_monomials.size());
}

TEST(Scans, Theorem49UpToSeven) {
  const auto rows = theorem49_scan(7, 1);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.consistent) << r.n;
    EXPECT_EQ(r.mu, static_cast<std::size_t>(p_count_formula(r.n))) << r.n;
  }
  EXPECT_FALSE(rows[3].minimal);  // N = 6
}

TEST(Scans, ConjectureUpToSeven) {
  const auto rows = conjecture_scan(7, 2);
  EXPECT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_EQ(r.missing_count, 0u) << r.d << ' ' << r.n << ' ' << r.m;
    EXPECT_LT(r.n, r.m);
    EXPECT_LT(r.m, r.d);
  }
}

TEST(Scans, ParallelMapKeepsOrderAndRethrows) {
  const auto squares = parallel_map(50, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(squares[i], i * i);
  EXPECT_THROW(parallel_map(10, 3,
                            [](std::size_t i) -> int {
                              if (i == 7) throw BudgetExceeded("seven");
                              return 0;
                            }),
               BudgetExceeded);
}
