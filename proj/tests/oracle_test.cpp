#include <gtest/gtest.h>

#include "rholatin/oracle.hpp"

namespace rholatin {
namespace {

// Number of x in [1, n]^k with sum n^2, by inclusion-exclusion.
long long composition_count(int n, int k) {
  auto binom = [](long long a, long long b) -> long long {
    if (b < 0 || a < b) return 0;
    long long out = 1;
    for (long long i = 1; i <= b; ++i) out = out * (a - b + i) / i;
    return out;
  };
  long long total = 0;
  const int excess = n * n - k;  // sum of (x - 1), each in [0, n - 1]
  for (int j = 0; j <= k; ++j) {
    const long long term = binom(k, j) * binom(excess - static_cast<long long>(j) * n + k - 1, k - 1);
    total += (j % 2 ? -term : term);
  }
  return total;
}

TEST(Enumeration, RhoCountsMatchClosedForm) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = n; k <= 8; ++k) {
      EXPECT_EQ(static_cast<long long>(rho_compositions(n, k).size()), composition_count(n, k)) << n << "," << k;
    }
  }
  EXPECT_EQ(rho_compositions(2, 4).size(), 1u);
  EXPECT_EQ(rho_compositions(4, 6).size(), 546u);
}

TEST(Enumeration, SmallestCase) {
  std::vector<RhoInstance> seen;
  enumerate_instances(EnumerationBounds{1, 1, 1, false, false}, [&](const RhoInstance& x) { seen.push_back(x); });
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].rho, RhoVector(1, {1}));
  EXPECT_EQ(seen[0].r(), 0);
}

TEST(Enumeration, SymmetricLatinSquaresOfOrderFour) {
  RhoVector rho(4, {4, 4, 4, 4});
  const std::vector<long long> expected{1, 4, 36, 192, 96};
  for (int r = 0; r <= 4; ++r) {
    long long count = 0;
    for_each_symmetric_rectangle(rho, r, [&](const SymmetricSquare&) { ++count; });
    EXPECT_EQ(count, expected[r]) << "r=" << r;
  }
}

TEST(Enumeration, FrozenStreamSizes) {
  long long plain = 0;
  long long tails = 0;
  enumerate_instances(EnumerationBounds{1, 3, 5, false, false}, [&](const RhoInstance&) { ++plain; });
  enumerate_instances(EnumerationBounds{1, 3, 5, true, false}, [&](const RhoInstance&) { ++tails; });
  EXPECT_EQ(plain, 2639);
  EXPECT_EQ(tails, 16881);
}

TEST(Enumeration, FilterGivesSubset) {
  long long all = 0;
  long long kept = 0;
  EnumerationBounds bounds{1, 3, 4, false, false};
  enumerate_instances(bounds, [&](const RhoInstance&) { ++all; });
  enumerate_instances(
      bounds, [&](const RhoInstance& x) {
        ++kept;
        EXPECT_TRUE(is_rho_admissible(count_occurrences(x.square), x.rho, x.r()).satisfied);
      },
      [](const RhoInstance& x) { return is_rho_admissible(count_occurrences(x.square), x.rho, x.r()).satisfied; });
  EXPECT_LT(kept, all);
  EXPECT_GT(kept, 0);
}

TEST(BruteForce, FullSquareIsItself) {
  auto full = SymmetricSquare::from_grid(3, 2, {{2, 1}, {1, 3}});
  const auto found = brute_force_complete(RhoInstance(RhoVector(2, {2, 1, 1}), full));
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, full);
}

TEST(BruteForce, AllOnesOrderTwoIsImpossible) {
  EXPECT_FALSE(brute_force_complete(RhoInstance(RhoVector(2, {1, 1, 1, 1}), SymmetricSquare::empty(2, 4))));
}

TEST(BruteForce, RunningExampleCompletes) {
  auto block = SymmetricSquare::from_grid(4, 2, {{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto found = brute_force_complete(RhoInstance(RhoVector(4, {4, 4, 4, 4}), block));
  ASSERT_TRUE(found);
  EXPECT_EQ(found->truncated(2), block);
}

TEST(BruteForce, BudgetIsLoud) {
  RhoVector rho(5, {5, 5, 5, 5, 5});
  EXPECT_THROW(brute_force_complete(RhoInstance(rho, SymmetricSquare::empty(5, 5)), 3), BudgetError);
}

TEST(BruteForce, FrozenCompletableCounts) {
  long long plain = 0;
  long long tails = 0;
  enumerate_instances(EnumerationBounds{1, 3, 5, false, false},
                      [&](const RhoInstance& x) { plain += brute_force_complete(x).has_value(); });
  enumerate_instances(EnumerationBounds{1, 3, 5, true, false},
                      [&](const RhoInstance& x) { tails += brute_force_complete(x).has_value(); });
  EXPECT_EQ(plain, 865);
  EXPECT_EQ(tails, 920);
}

TEST(BruteForce, TailNeverHelps) {
  enumerate_instances(EnumerationBounds{1, 3, 4, false, false}, [](const RhoInstance& x) {
    if (brute_force_complete(x)) return;
    for_each_tail(x.n(), x.r(), x.k(), [&](const DiagonalTail& d) {
      EXPECT_FALSE(brute_force_complete(RhoInstance(x.rho, x.square, d)));
    });
  });
}

TEST(Crosscheck, SmallRunsHaveNoDisagreements) {
  for (auto mode : {CrosscheckMode::kNodiag, CrosscheckMode::kConstruct, CrosscheckMode::kFactorEquiv}) {
    CrosscheckOptions options;
    options.n_max = 3;
    options.k_max = 5;
    options.mode = mode;
    const auto report = crosscheck(options);
    EXPECT_TRUE(report.ok()) << mode_name(mode);
    EXPECT_EQ(report.agreements, report.instances_tested);
    EXPECT_GT(report.instances_tested, 0u);
  }
}

TEST(Crosscheck, EmptyStreamIsZeroZero) {
  CrosscheckOptions options;
  options.n_min = 3;
  options.n_max = 2;
  const auto report = crosscheck(options);
  EXPECT_EQ(report.instances_tested, 0u);
  EXPECT_EQ(report.agreements, 0u);
  EXPECT_TRUE(report.ok());
}

TEST(Crosscheck, ShardingAndRepeatsGiveIdenticalReports) {
  CrosscheckOptions options;
  options.n_max = 3;
  options.k_max = 4;
  options.mode = CrosscheckMode::kDiag;
  const auto a = crosscheck(options).to_json();
  options.shards = 3;
  const auto b = crosscheck(options).to_json();
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.dump(), crosscheck(options).to_json().dump());
}

TEST(Crosscheck, SampledRunIsSeedDetermined) {
  CrosscheckOptions options;
  options.n_min = 4;
  options.n_max = 4;
  options.k_max = 5;
  options.sample_ppm = 20'000;
  options.seed = 5;
  const auto a = crosscheck(options);
  const auto b = crosscheck(options);
  EXPECT_EQ(a.instances_tested, b.instances_tested);
  EXPECT_GT(a.instances_tested, 0u);
  EXPECT_TRUE(a.ok());
}

TEST(Crosscheck, MergeIsAssociative) {
  CrosscheckReport x;
  x.instances_tested = 3;
  x.agreements = 2;
  x.disagreements.push_back({7, "a", {}});
  CrosscheckReport y;
  y.instances_tested = 1;
  y.agreements = 1;
  CrosscheckReport z;
  z.instances_tested = 2;
  z.agreements = 1;
  z.disagreements.push_back({2, "b", {}});
  CrosscheckReport left = x;
  left.merge(y);
  left.merge(z);
  CrosscheckReport yz = y;
  yz.merge(z);
  CrosscheckReport right = x;
  right.merge(yz);
  EXPECT_EQ(left.to_json().dump(), right.to_json().dump());
  EXPECT_EQ(left.disagreements.front().index, 2u);
}

}  // namespace
}  // namespace rholatin
