#include <gtest/gtest.h>

#include "rholatin/conditions.hpp"
#include "rholatin/oracle.hpp"

namespace rholatin {
namespace {

const RhoVector kRho4(4, {4, 4, 4, 4});

SymmetricSquare running_block() {
  return SymmetricSquare::from_grid(4, 2, {{1, 2, 0, 0}, {2, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}

TEST(RhoAdmissible, RunningExampleHolds) {
  const auto v = is_rho_admissible(count_occurrences(running_block()), kRho4, 2);
  EXPECT_TRUE(v.satisfied);
  EXPECT_EQ(v.describe(), "satisfied");
}

TEST(RhoAdmissible, FullSquareHolds) {
  RhoVector rho(2, {2, 1, 1});
  auto full = SymmetricSquare::from_grid(3, 2, {{2, 1}, {1, 3}});
  EXPECT_TRUE(is_rho_admissible(count_occurrences(full), rho, 2).satisfied);
}

TEST(RhoAdmissible, TooManyOddSymbolsNamesCongcon1) {
  RhoVector rho(2, {1, 1, 1, 1});
  const auto v = is_rho_admissible(OccurrenceVector({0, 0, 0, 0}), rho, 0);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(v.violated, Condition::kCongcon1);
  EXPECT_EQ(v.describe(), "congcon1");
}

TEST(RhoAdmissible, LargeGapNamesEasynecconAndSymbol) {
  // n = 3, r = 2: symbol 3 is absent from the block and needs 3 > 2(n - r) cells
  RhoVector rho(3, {3, 3, 3});
  auto block = SymmetricSquare::from_grid(3, 2, {{1, 2, 0}, {2, 1, 0}, {0, 0, 0}});
  const auto v = is_rho_admissible(count_occurrences(block), rho, 2);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(v.describe(), "easyneccon at symbol 3");
}

TEST(RhoAdmissible, ParityMismatchNamesCongcon2) {
  // For a genuine rectangle sum(rho - e) = n^2 - r^2 forces O = n - r (mod 2),
  // so only a hand-made e can reach this branch.
  RhoVector rho(3, {3, 2, 2, 2});
  const auto v = is_rho_admissible(OccurrenceVector({1, 0, 0, 0}), rho, 0);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(v.violated, Condition::kCongcon2);
  EXPECT_TRUE(is_rho_admissible(OccurrenceVector({0, 0, 0, 0}), RhoVector(3, {3, 2, 2, 2}), 0).satisfied);
}

TEST(RhoAdmissible, Congcon2FollowsFromCongcon1OnRealRectangles) {
  EnumerationBounds bounds{1, 3, 5, false, false};
  enumerate_instances(bounds, [](const RhoInstance& x) {
    EXPECT_NE(is_rho_admissible(count_occurrences(x.square), x.rho, x.r()).violated, Condition::kCongcon2);
  });
}

TEST(RhoDAdmissible, SmallExamples) {
  const auto e = count_occurrences(running_block());
  auto v = is_rho_d_admissible(e, kRho4, DiagonalTail(4, 2, {0, 0, 1, 1}), 2);
  EXPECT_EQ(v.describe(), "congcon1diag at symbol 3");
  v = is_rho_d_admissible(e, kRho4, DiagonalTail(4, 2, {1, 1, 0, 0}), 2);
  EXPECT_EQ(v.describe(), "congcon1diag at symbol 1");
  v = is_rho_d_admissible(e, kRho4, DiagonalTail(4, 2, {0, 0, 2, 0}), 2);
  EXPECT_EQ(v.describe(), "easyneccondiag at symbol 3");
  EXPECT_TRUE(is_rho_d_admissible(e, kRho4, DiagonalTail(4, 2, {2, 0, 0, 0}), 2).satisfied);
}

TEST(NearlyAdmissible, IsImpliedByAdmissible) {
  EnumerationBounds bounds{1, 3, 5, false, false};
  enumerate_instances(bounds, [](const RhoInstance& x) {
    const auto e = count_occurrences(x.square);
    if (is_rho_admissible(e, x.rho, x.r()).satisfied) {
      EXPECT_TRUE(is_nearly_rho_admissible(e, x.rho, x.r()).satisfied);
    }
  });
}

TEST(SubsetConditions, RunningExampleSatisfiedBothWays) {
  const auto check = check_subset_conditions_nodiag(running_block(), kRho4);
  EXPECT_TRUE(check.hall.satisfied);
  EXPECT_TRUE(check.pairwise.satisfied);
  const auto diag = check_subset_conditions_diag(running_block(), kRho4, DiagonalTail(4, 2, {2, 0, 0, 0}));
  EXPECT_TRUE(diag.agree());
  EXPECT_TRUE(diag.pairwise.satisfied);
}

TEST(SubsetConditions, EmptySetsHaveZeroSlackContribution) {
  const auto block = running_block();
  // I = {}, K = {}: left side is sum of all f, right side 0
  EXPECT_GE(pairwise_slack(block, kRho4, std::nullopt, std::vector<int>{}, std::vector<Symbol>{}), 0);
}

TEST(SubsetConditions, OddTailBoundIsRejected) {
  EXPECT_THROW(check_subset_conditions_diag(running_block(), kRho4, DiagonalTail(4, 2, {1, 1, 0, 0})),
               StructuralError);
}

TEST(SubsetConditions, BudgetIsEnforced) {
  SubsetBudget tiny{1, 16};
  EXPECT_THROW(check_subset_conditions_nodiag(running_block(), kRho4, tiny), BudgetError);
}

TEST(SubsetConditions, FullBlockIsRejected) {
  auto full = SymmetricSquare::from_grid(3, 2, {{2, 1}, {1, 3}});
  EXPECT_THROW(check_subset_conditions_nodiag(full, RhoVector(2, {2, 1, 1})), StructuralError);
}

// An admissible rectangle with no completion: the witness names the pairwise
// condition and re-evaluates to a negative slack.
TEST(SubsetConditions, ViolationWitnessReevaluates) {
  int found = 0;
  EnumerationBounds bounds{4, 4, 5, false, false};
  enumerate_instances(bounds, [&](const RhoInstance& x) {
    const auto e = count_occurrences(x.square);
    if (!is_rho_admissible(e, x.rho, x.r()).satisfied) return;
    const auto check = check_subset_conditions_nodiag(x.square, x.rho);
    EXPECT_TRUE(check.agree());
    if (check.pairwise.satisfied) return;
    ++found;
    const auto& w = *check.pairwise.witness;
    EXPECT_LT(pairwise_slack(x.square, x.rho, std::nullopt, w.rows, w.symbols), 0);
    EXPECT_EQ(check.pairwise.violated, Condition::kReallylongineqnodial);
  });
  EXPECT_GT(found, 0);
}

TEST(Describe, FormatsWitnessesOneBased) {
  const auto v = ConditionVerdict::at_subsets(Condition::kReallylongineqnodial, {{0}, {3, 4}});
  EXPECT_EQ(v.describe(), "reallylongineqnodial at I={1}, K={3,4}");
  const auto rows = ConditionVerdict::at_subsets(Condition::kLongineqdial1, {{0, 2}, {}});
  EXPECT_EQ(rows.describe(), "longineqdial1 at I={1,3}");
  const auto syms = ConditionVerdict::at_subsets(Condition::kLongineqnodial2, {{}, {2}});
  EXPECT_EQ(syms.describe(), "longineqnodial2 at K={2}");
}

TEST(FastPaths, EmptyBlockMakesNoTailCorollariesApplicable) {
  for (const auto& rho : rho_compositions(3, 5)) {
    const auto reports = corollary_fastpaths(SymmetricSquare::empty(3, 5), rho, std::nullopt);
    const bool nearly = is_nearly_rho_admissible(OccurrenceVector(std::vector<int>(5, 0)), rho, 0).satisfied;
    for (const auto& rep : reports) {
      if (rep.id == Corollary::kCor1NoDiag || rep.id == Corollary::kCor2NoDiag ||
          rep.id == Corollary::kCor3NoDiag) {
        EXPECT_TRUE(rep.applicable) << corollary_name(rep.id);
      }
      if (rep.id == Corollary::kCor3NoDiag) {
        EXPECT_EQ(rep.verdict, nearly);
      }
    }
  }
}

TEST(FastPaths, CruseSpecializationMatchesClassicalConditions) {
  // k = n, rho = (n..n): whenever a fast path fires it agrees with Cruse
  int fired = 0;
  for (int n = 2; n <= 4; ++n) {
    RhoVector rho(n, std::vector<int>(n, n));
    for (int r = 0; r < n; ++r) {
      for_each_symmetric_rectangle(rho, r, [&](const SymmetricSquare& s) {
        for (const auto& rep : corollary_fastpaths(s, rho, std::nullopt)) {
          if (!rep.applicable) continue;
          ++fired;
          EXPECT_EQ(rep.verdict, cruse_conditions(s)) << corollary_name(rep.id);
        }
      });
    }
  }
  EXPECT_GT(fired, 0);
}

TEST(FastPaths, VerdictsMatchFullTheoremOnSmallInstances) {
  EnumerationBounds bounds{1, 3, 5, false, false};
  int fired = 0;
  enumerate_instances(bounds, [&](const RhoInstance& x) {
    const bool full = subset_theorem_verdict(x.square, x.rho, std::nullopt).satisfied;
    for (const auto& rep : corollary_fastpaths(x.square, x.rho, std::nullopt)) {
      if (!rep.applicable) continue;
      ++fired;
      ASSERT_TRUE(rep.verdict.has_value());
      EXPECT_EQ(*rep.verdict, full) << corollary_name(rep.id);
      if (rep.alternate_verdict) {
        EXPECT_EQ(*rep.alternate_verdict, full) << corollary_name(rep.id);
      }
    }
  });
  EXPECT_GT(fired, 0);
}

}  // namespace
}  // namespace rholatin
