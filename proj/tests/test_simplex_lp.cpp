#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "shf/random.hpp"
#include "shf/simplex_lp.hpp"

using namespace shf;

namespace {

// Brute force over all bases of a two-variable LP with <= rows:
// enumerate intersections of constraint pairs (axes included).
double brute_force_2d(const LpProblem& lp) {
  std::vector<std::array<double, 3>> lines;  // a x + b y = c
  for (std::size_t i = 0; i < lp.a_ub.size(); ++i) {
    lines.push_back({lp.a_ub[i][0], lp.a_ub[i][1], lp.b_ub[i]});
  }
  lines.push_back({1, 0, 0});
  lines.push_back({0, 1, 0});
  double best = -INFINITY;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& l1 = lines[i];
      const auto& l2 = lines[j];
      const double det = l1[0] * l2[1] - l1[1] * l2[0];
      if (std::abs(det) < 1e-12) continue;
      const double x = (l1[2] * l2[1] - l1[1] * l2[2]) / det;
      const double y = (l1[0] * l2[2] - l1[2] * l2[0]) / det;
      if (x < -1e-9 || y < -1e-9) continue;
      bool ok = true;
      for (std::size_t r = 0; r < lp.a_ub.size(); ++r) {
        if (lp.a_ub[r][0] * x + lp.a_ub[r][1] * y > lp.b_ub[r] + 1e-9) ok = false;
      }
      if (ok) best = std::max(best, lp.objective[0] * x + lp.objective[1] * y);
    }
  }
  return best;
}

}  // namespace

TEST(SimplexLp, TextbookProblem) {
  LpProblem lp;
  lp.objective = {3.0, 5.0};
  lp.a_ub = {{1, 0}, {0, 2}, {3, 2}};
  lp.b_ub = {4, 12, 18};
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 36.0, 1e-9);
  EXPECT_NEAR(r.x[0], 2.0, 1e-9);
  EXPECT_NEAR(r.x[1], 6.0, 1e-9);
}

TEST(SimplexLp, EqualityAndNegativeRhs) {
  // max x + 2y  s.t. x + y = 1, -x <= -0.25 (x >= 0.25), y <= 0.5
  LpProblem lp;
  lp.objective = {1.0, 2.0};
  lp.a_ub = {{-1, 0}, {0, 1}};
  lp.b_ub = {-0.25, 0.5};
  lp.a_eq = {{1, 1}};
  lp.b_eq = {1};
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x[1], 0.5, 1e-12);
}

TEST(SimplexLp, DetectsInfeasibleAndUnbounded) {
  LpProblem inf;
  inf.objective = {1.0};
  inf.a_ub = {{1.0}};
  inf.b_ub = {1.0};
  inf.a_eq = {{1.0}};
  inf.b_eq = {2.0};
  EXPECT_EQ(solve_lp(inf).status, LpStatus::kInfeasible);

  LpProblem unb;
  unb.objective = {1.0, 1.0};
  unb.a_ub = {{1.0, -1.0}};
  unb.b_ub = {1.0};
  EXPECT_EQ(solve_lp(unb).status, LpStatus::kUnbounded);
}

TEST(SimplexLp, DegenerateDoesNotCycle) {
  // Beale's classic cycling example; Bland's rule must terminate.
  LpProblem lp;
  lp.objective = {0.75, -150.0, 0.02, -6.0};
  lp.a_ub = {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}};
  lp.b_ub = {0.0, 0.0, 1.0};
  const LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.05, 1e-9);
}

TEST(SimplexLp, RandomTwoVariableAgainstVertexEnumeration) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    LpProblem lp;
    lp.objective = {rng.uniform(-1, 2), rng.uniform(-1, 2)};
    const int rows = 2 + static_cast<int>(rng.below(5));
    for (int i = 0; i < rows; ++i) {
      lp.a_ub.push_back({rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)});
      lp.b_ub.push_back(rng.uniform(0.5, 3.0));
    }
    const LpResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.objective, brute_force_2d(lp), 1e-9) << "trial " << trial;
  }
}
