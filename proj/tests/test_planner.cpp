#include <gtest/gtest.h>

#include "shf/planner.hpp"
#include "test_support.hpp"

using namespace shf;
using shf::testing::default_params;

TEST(WindowAxis, IncludesUpperEnd) {
  const auto a = window_axis(0.0, 1.0, 0.3);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a.back(), 1.0);
  const auto b = window_axis(0.0, 1.0, 0.25);
  ASSERT_EQ(b.size(), 5u);
  EXPECT_EQ(window_axis(2.0, 2.0, 0.25).size(), 1u);
}

TEST(PlannerConfig, RejectsBadValues) {
  PlannerConfig c;
  c.d_min = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = PlannerConfig{};
  c.gap_tol = -1.0;
  EXPECT_THROW(c.validate(), Error);
  c = PlannerConfig{};
  c.workers = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(SolveP1, SingleNodeHoversAtNode) {
  const SystemParams p = default_params();
  const SolveReport r = solve_p1(p, Topology({4.0}));
  EXPECT_NEAR(r.min_energy, 8.0e-3, 8.0e-12);
  EXPECT_EQ(r.trajectory.hover_count(), 1u);
  EXPECT_NEAR(r.trajectory.position_at(10.0), 4.0, 1e-12);
  EXPECT_NEAR(r.upper_bound, 8.0e-3, 8.0e-12);
}

TEST(SolveP1, MirrorSymmetry) {
  const SystemParams p = default_params();
  PlannerConfig c;
  c.refine = false;
  const SolveReport a = solve_p1(p, Topology({0.0, 3.0, 11.0}), c);
  const SolveReport b = solve_p1(p, Topology({0.0, 8.0, 11.0}), c);
  EXPECT_NEAR(a.min_energy, b.min_energy, 1e-5 * a.min_energy);
}

TEST(SolveP1, StructureAndBounds) {
  const SystemParams p = default_params();
  Rng rng(8);
  const Topology topo = shf::testing::random_topology(rng, 4, 20.0);
  const SolveReport r = solve_p1(p, topo);
  EXPECT_TRUE(r.trajectory.is_shf(p));
  EXPECT_NO_THROW(r.trajectory.validate(p));
  EXPECT_NEAR(r.trajectory.duration(), p.duration, 1e-9);
  EXPECT_LE(r.trajectory.hover_count(), 2 * topo.size() + 1);
  EXPECT_LE(r.min_energy, r.upper_bound * (1.0 + 1e-9));
  EXPECT_LE(r.grid_stats.worst_gap, 1e-4);
  EXPECT_EQ(r.grid_stats.weak_duality_violations, 0u);
  EXPECT_EQ(r.grid_stats.failed, 0u);

  const EnergyVector e = energy_vector(r.trajectory, topo, p);
  double m = e[0];
  for (double v : e) m = std::min(m, v);
  EXPECT_NEAR(m, r.min_energy, 1e-12 * m);
}

TEST(SolveP1, GridRefinementWithinSensitivityBound) {
  const SystemParams p = default_params();
  const Topology topo({1.0, 6.0, 15.0});
  PlannerConfig coarse;
  coarse.refine = false;
  coarse.d_min = 0.5;
  PlannerConfig fine = coarse;
  fine.d_min = 0.25;
  const double a = solve_p1(p, topo, coarse).min_energy;
  const double b = solve_p1(p, topo, fine).min_energy;
  // The coarse grid is a subset of the fine one.
  EXPECT_GE(b, a * (1.0 - 1e-4));
  EXPECT_LE(b - a, grid_sensitivity_bound(p, 0.5));
}

TEST(SolveP1, DeterministicAndWorkerIndependent) {
  const SystemParams p = default_params();
  Rng rng(13);
  const Topology topo = shf::testing::random_topology(rng, 3, 20.0);
  PlannerConfig c;
  const SolveReport a = solve_p1(p, topo, c);
  const SolveReport b = solve_p1(p, topo, c);
  c.workers = 2;
  const SolveReport d = solve_p1(p, topo, c);
  EXPECT_EQ(a.min_energy, b.min_energy);
  EXPECT_EQ(a.best_window.lo, d.best_window.lo);
  EXPECT_EQ(a.best_window.hi, d.best_window.hi);
  EXPECT_EQ(a.min_energy, d.min_energy);
}

TEST(SolveP1, FastVehicleApproachesUpperBound) {
  SystemParams p = default_params();
  p.max_speed = 1000.0;
  const Topology topo({2.0, 9.0, 17.0});
  const SolveReport r = solve_p1(p, topo);
  EXPECT_LT((r.upper_bound - r.min_energy) / r.upper_bound, 1e-3);
}

TEST(SolveP11, ZeroBudgetWindowIsSweep) {
  const SystemParams p = default_params();
  const Topology topo({0.0, 10.0, 20.0});
  const auto s = solve_p11(Window{0.0, 20.0}, p, topo);
  ASSERT_TRUE(s.has_value());
  for (std::size_t k = 0; k < topo.size(); ++k) {
    EXPECT_NEAR(s->energies[k], cruise_energy(p, topo[k], 0.0, 20.0, 1.0), 1e-15);
  }
  EXPECT_FALSE(solve_p11(Window{0.0, 20.5}, p, topo).has_value());
}

TEST(SolveP11, TrajectoryEnergiesMatchReported) {
  const SystemParams p = default_params();
  const Topology topo({3.0, 7.0, 12.0});
  const auto s = solve_p11(Window{4.0, 10.0}, p, topo);
  ASSERT_TRUE(s.has_value());
  const EnergyVector e = energy_vector(s->trajectory, topo, p);
  for (std::size_t k = 0; k < topo.size(); ++k) EXPECT_NEAR(e[k], s->energies[k], 1e-14);
  EXPECT_NEAR(s->trajectory.position_at(0.0), 4.0, 1e-12);
  EXPECT_NEAR(s->trajectory.position_at(p.duration), 10.0, 1e-12);
}

TEST(SpeedFree, DominatesEveryWindow) {
  const SystemParams p = default_params();
  const Topology topo({0.0, 10.0});
  const double ub = speed_free_upper_bound(p, topo);
  EXPECT_NEAR(ub, 4.82842712e-3, 1e-6 * ub);
  for (double lo : {0.0, 2.0, 4.0}) {
    for (double hi : {6.0, 8.0, 10.0}) {
      const auto s = solve_p11(Window{lo, hi}, p, topo);
      ASSERT_TRUE(s.has_value());
      EXPECT_LE(s->min_energy, ub * (1.0 + 1e-9));
    }
  }
}
