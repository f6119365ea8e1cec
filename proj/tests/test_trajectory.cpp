#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

using namespace shf;
using shf::testing::default_params;

TEST(Trajectory, ValidateCatchesViolations) {
  const SystemParams p = default_params();
  Trajectory ok({Hover{0, 2}, Cruise{0, 3, 1.0}, Hover{3, 1}});
  EXPECT_NO_THROW(ok.validate(p));
  EXPECT_TRUE(ok.is_shf(p));
  EXPECT_EQ(ok.hover_count(), 2u);
  EXPECT_DOUBLE_EQ(ok.duration(), 6.0);

  EXPECT_THROW(Trajectory({Cruise{0, 3, 1.5}}).validate(p), Error);
  EXPECT_THROW(Trajectory({Cruise{3, 0, 1.0}}).validate(p), Error);
  EXPECT_THROW(Trajectory({Hover{0, 1}, Hover{1, 1}}).validate(p), Error);
  EXPECT_FALSE(Trajectory({Cruise{0, 3, 0.5}}).is_shf(p));
}

TEST(Trajectory, PositionAt) {
  Trajectory t({Hover{1, 2}, Cruise{1, 4, 1.0}, Hover{4, 1}});
  EXPECT_DOUBLE_EQ(t.position_at(0.0), 1.0);
  EXPECT_DOUBLE_EQ(t.position_at(2.0), 1.0);
  EXPECT_DOUBLE_EQ(t.position_at(3.5), 2.5);
  EXPECT_DOUBLE_EQ(t.position_at(6.0), 4.0);
}

TEST(HoverSchedule, CanonicalizeSortsMergesDrops) {
  HoverSchedule s;
  s.points = {3.0, 1.0, 3.0 + 1e-12, 2.0};
  s.durations = {1.0, 2.0, 0.5, 0.0};
  s.canonicalize();
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_EQ(s.points[0], 1.0);
  EXPECT_EQ(s.durations[0], 2.0);
  EXPECT_EQ(s.durations[1], 1.5);
}

TEST(Decompose, EnergyIdentityOnRandomTrajectories) {
  const SystemParams p = default_params();
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Topology topo = shf::testing::random_topology(rng, 5, 20.0);
    const Trajectory t = shf::testing::random_unidirectional(rng, p, rng.uniform(0, 5), 15.0);
    const Decomposition d = decompose(t, p);
    EXPECT_TRUE(d.max_speed.is_shf(p));
    const EnergyVector e = energy_vector(t, topo, p);
    const EnergyVector a = energy_vector(d.max_speed, topo, p);
    const EnergyVector b = energy_vector(d.speed_free, topo, p);
    for (std::size_t k = 0; k < topo.size(); ++k) {
      EXPECT_NEAR(e[k], a[k] + b[k], 1e-12) << "trial " << trial;
    }
  }
}

TEST(Decompose, HoverOnlyHasNoSweep) {
  const SystemParams p = default_params();
  const Decomposition d = decompose(Trajectory({Hover{2, 20}}), p);
  EXPECT_TRUE(d.max_speed.empty());
  ASSERT_EQ(d.speed_free.segments().size(), 1u);
}

TEST(Decompose, NearMaxSpeedCruiseHasNoResidual) {
  const SystemParams p = default_params();
  const Decomposition d = decompose(Trajectory({Cruise{0, 5, 1.0 - 1e-14}}), p);
  EXPECT_TRUE(d.speed_free.empty());
}

TEST(AssembleShf, FillsMissionAndMatchesEnergies) {
  const SystemParams p = default_params();
  const Topology topo({1.0, 6.0, 12.0});
  HoverSchedule s;
  s.x_i = 0.0;
  s.x_f = 10.0;
  s.points = {7.0, 2.0};
  s.durations = {6.0, 4.0};
  const Trajectory t = assemble_shf(s, p);
  EXPECT_NO_THROW(t.validate(p));
  EXPECT_TRUE(t.is_shf(p));
  EXPECT_NEAR(t.duration(), p.duration, 1e-12);
  EXPECT_EQ(t.hover_count(), 2u);
  const EnergyVector e = energy_vector(t, topo, p);
  for (std::size_t k = 0; k < topo.size(); ++k) {
    const double want = cruise_energy(p, topo[k], 0.0, 10.0, 1.0) +
                        hover_energy(p, topo[k], 2.0, 4.0) +
                        hover_energy(p, topo[k], 7.0, 6.0);
    EXPECT_NEAR(e[k], want, 1e-15);
  }
}

TEST(AssembleShf, RejectsBudgetMismatch) {
  const SystemParams p = default_params();
  HoverSchedule s;
  s.x_i = 0.0;
  s.x_f = 10.0;
  s.points = {5.0};
  s.durations = {9.0};
  EXPECT_THROW(assemble_shf(s, p), Error);
  s.durations = {10.0};
  s.points = {11.0};
  EXPECT_THROW(assemble_shf(s, p), Error);
}

TEST(Trace, SamplesGridAndKnots) {
  Trajectory t({Hover{0, 0.015}, Cruise{0, 0.02, 1.0}});
  const TraceRows rows = sample_trace(t, 0.01);
  ASSERT_GE(rows.size(), 4u);
  EXPECT_EQ(rows.front().first, 0.0);
  EXPECT_NEAR(rows.back().first, 0.035, 1e-15);
  EXPECT_NEAR(rows.back().second, 0.02, 1e-15);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].first, rows[i - 1].first);
  std::ostringstream out;
  write_trace_csv(out, rows);
  EXPECT_EQ(out.str().rfind("t_seconds,x_meters\n", 0), 0u);
}
