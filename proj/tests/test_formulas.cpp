#include "sandpile/formulas.hpp"

#include <gtest/gtest.h>

namespace sandpile {
namespace {

std::vector<BigInt> big(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

ElementaryDivisorProfile profile(Prime p, std::initializer_list<std::pair<int, Index>> entries) {
  ElementaryDivisorProfile e;
  e.prime = p;
  e.kernel_rank = 1;
  for (const auto& [i, c] : entries) e.set(i, c);
  return e;
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(8, 2), 3);
  EXPECT_EQ(valuation(10, 3), 0);
  EXPECT_EQ(valuation(50, 5), 2);
  EXPECT_EQ(valuation(-12, 2), 2);
  EXPECT_THROW(valuation(0, 2), std::domain_error);
  EXPECT_THROW(valuation(12, 4), std::invalid_argument);
}

TEST(SpectralData, Examples) {
  auto check = [](int n, long long r, long long s, long long f, long long g) {
    const auto sp = spectral_data(n);
    EXPECT_EQ(sp.r, r);
    EXPECT_EQ(sp.s, s);
    EXPECT_EQ(sp.f, f);
    EXPECT_EQ(sp.g, g);
  };
  check(5, 5, 2, 4, 5);
  check(6, 9, 5, 5, 9);
  check(7, 14, 9, 6, 14);
  EXPECT_THROW(spectral_data(4), std::out_of_range);
}

TEST(SpectralData, Invariants) {
  for (int n = 5; n <= 60; ++n) {
    const auto sp = spectral_data(n);
    EXPECT_EQ(sp.f + sp.g + 1, static_cast<long long>(n) * (n - 1) / 2);
    EXPECT_EQ(sp.r, sp.g);
  }
}

TEST(CriticalGroupOrder, Examples) {
  // 5^3 4^4 2^4 1^5 / 2^8 and 6^4 5^8 3^5 2^9 / 2^13.
  EXPECT_EQ(critical_group_order(5), 2000);
  EXPECT_EQ(critical_group_order(6), BigInt("7688671875"));
  EXPECT_EQ(critical_group_order(7), cokernel(laplacian_matrix(kneser_graph(7, 2))).torsion_order());
  EXPECT_THROW(critical_group_order(4), std::out_of_range);
}

TEST(CriticalGroupOrder, ValuationMatchesBigInteger) {
  for (int n = 5; n <= 30; ++n) {
    const BigInt order = critical_group_order(n);
    for (Prime p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
      ASSERT_EQ(order_valuation(n, p), valuation(order, p)) << n << ' ' << p;
    }
  }
}

TEST(LaplacianIdentity, Examples) {
  EXPECT_TRUE(verify_laplacian_identity(5));
  EXPECT_TRUE(verify_laplacian_identity(6));
  const auto l = laplacian_matrix<long long>(kneser_graph(5, 2));
  EXPECT_TRUE(laplacian_identity_holds(l, 5, 2, 1));
  EXPECT_FALSE(laplacian_identity_holds(l, 5, 3, 1));
}

TEST(LaplacianIdentity, HoldsForFamily) {
  for (int n = 5; n <= 20; ++n) EXPECT_TRUE(verify_laplacian_identity(n)) << n;
}

TEST(BranchSelection, Labels) {
  EXPECT_EQ(branch_label(select_branch(7, 7).branch), "Case 1a");
  EXPECT_EQ(branch_label(select_branch(10, 3).branch), "Case 2a");
  EXPECT_EQ(select_branch(10, 3).a, 2);
  EXPECT_EQ(branch_label(select_branch(8, 2).branch), "Case 3 d-i");
  EXPECT_EQ(branch_label(select_branch(12, 2).branch), "Case 3 d-ii");
  EXPECT_EQ(branch_label(select_branch(6, 2).branch), "Case 3b");
  EXPECT_EQ(select_branch(6, 2).a, std::nullopt);
}

TEST(BranchSelection, Errors) {
  EXPECT_THROW(select_branch(7, 11), std::invalid_argument);
  EXPECT_THROW(select_branch(5, 3), std::invalid_argument);
  EXPECT_THROW(select_branch(7, 4), std::invalid_argument);
  EXPECT_THROW(select_branch(4, 2), std::out_of_range);
}

TEST(BranchSelection, ImpossibleTwoAdicCaseNeverFires) {
  for (int n = 5; n <= 200; ++n) {
    EXPECT_NO_THROW(select_branch(n, 2)) << n;
    EXPECT_NE(select_branch(n, 2).branch, Branch::case3d_iii);
  }
}

TEST(BranchSelection, LargePrimeDividesExactlyOneFactor) {
  for (int n = 5; n <= 200; ++n) {
    for (Prime p : order_primes(n)) {
      if (p <= 3) continue;
      int hits = 0;
      for (int m : {n, n - 1, n - 3, n - 4}) hits += m % static_cast<int>(p) == 0;
      ASSERT_EQ(hits, 1) << n << ' ' << p;
      ASSERT_NO_THROW(select_branch(n, p));
    }
  }
}

TEST(PredictedElementaryDivisors, Examples) {
  EXPECT_EQ(predicted_elementary_divisors(7, 7), profile(7, {{0, 15}, {1, 5}}));
  EXPECT_EQ(predicted_elementary_divisors(10, 3), profile(3, {{0, 9}, {1, 1}, {3, 34}}));
  const auto e8 = predicted_elementary_divisors(8, 2);
  EXPECT_EQ(e8, profile(2, {{0, 7}, {1, 14}, {3, 6}}));
  EXPECT_EQ(e8.weighted_sum(), 32);
  EXPECT_EQ(order_valuation(8, 2), 32);

  EXPECT_EQ(predicted_elementary_divisors(6, 2), profile(2, {{0, 14}}));
  EXPECT_THROW(predicted_elementary_divisors(7, 11), std::invalid_argument);
}

TEST(PredictedElementaryDivisors, ValuationBookkeeping) {
  for (int n = 5; n <= 40; ++n) {
    const auto sp = spectral_data(n);
    for (Prime p : order_primes(n)) {
      const auto e = predicted_elementary_divisors(n, p);
      ASSERT_EQ(e.weighted_sum(), order_valuation(n, p)) << n << ' ' << p;
      ASSERT_EQ(e.total(), sp.f + sp.g) << n << ' ' << p;
    }
  }
}

TEST(GrassmannConclusion, Examples) {
  const int a = 2;
  const long long f = 9, g = 35;
  GrassmannHypothesis single{7, {a}, {f}, a * (f - 1), f + g + 1, 1};
  EXPECT_EQ(grassmann_conclusion(single), profile(7, {{a, f - 1}, {0, g + 1}}));

  GrassmannHypothesis two{3, {1, 2}, {g + 1, g}, 2 * g - 1, f + g + 1, 1};
  EXPECT_EQ(grassmann_conclusion(two), profile(3, {{1, 1}, {2, g - 1}, {0, f}}));

  GrassmannHypothesis none{5, {}, {}, 0, f + g + 1, 1};
  EXPECT_EQ(grassmann_conclusion(none), profile(5, {{0, f + g}}));
}

TEST(GrassmannConclusion, RejectsInconsistentHypotheses) {
  EXPECT_THROW(grassmann_conclusion({2, {1}, {5}, 3, 20, 1}), std::invalid_argument);
  EXPECT_THROW(grassmann_conclusion({2, {2, 1}, {5, 3}, 6, 20, 1}), std::invalid_argument);
  EXPECT_THROW(grassmann_conclusion({2, {1, 2}, {3, 5}, 6, 20, 1}), std::invalid_argument);
  EXPECT_THROW(grassmann_conclusion({2, {1}, {5, 3}, 4, 20, 1}), std::invalid_argument);
}

TEST(GrassmannConclusion, ReproducesEveryBranch) {
  for (int n = 5; n <= 40; ++n) {
    for (Prime p : order_primes(n)) {
      ASSERT_EQ(grassmann_conclusion(branch_hypothesis(n, p)), predicted_elementary_divisors(n, p))
          << n << ' ' << p << ' ' << branch_label(select_branch(n, p).branch);
    }
  }
}

TEST(PredictedCriticalGroup, Examples) {
  EXPECT_EQ(predicted_critical_group(5).normalized(), big({2, 10, 10, 10}));
  EXPECT_EQ(predicted_critical_group(6).normalized(), big({5, 5, 5, 15, 45, 45, 45, 45}));
  EXPECT_EQ(predicted_critical_group(7).normalized(),
            big({3, 9, 9, 9, 9, 9, 9, 9, 18, 126, 126, 126, 126, 126}));
  EXPECT_EQ(predicted_critical_group(5).parity, Parity::odd);
  EXPECT_EQ(predicted_critical_group(6).parity, Parity::even);
  EXPECT_THROW(predicted_critical_group(4), std::out_of_range);
}

TEST(PredictedCriticalGroup, OrderAndChain) {
  for (int n = 5; n <= 40; ++n) {
    const auto pg = predicted_critical_group(n);
    EXPECT_EQ(pg.order(), critical_group_order(n)) << n;
    EXPECT_TRUE(is_divisibility_chain(pg.normalized())) << n;
  }
}

TEST(PredictedCriticalGroup, AgreesWithRegroupedBranchProfiles) {
  for (int n = 5; n <= 40; ++n) {
    std::vector<ElementaryDivisorProfile> profiles;
    for (Prime p : order_primes(n)) profiles.push_back(predicted_elementary_divisors(n, p));
    EXPECT_EQ(regroup_elementary_divisors(profiles), predicted_critical_group(n).normalized()) << n;
  }
}

}  // namespace
}  // namespace sandpile
