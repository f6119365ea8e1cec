#include <gtest/gtest.h>

#include <cmath>

#include "shf/model.hpp"

using namespace shf;

namespace {

SystemParams defaults() {
  SystemParams p;
  p.beta0 = db_to_linear(-30.0);
  p.power = dbm_to_watts(40.0);
  return p;
}

}  // namespace

TEST(Units, DecibelConversions) {
  EXPECT_DOUBLE_EQ(db_to_linear(-30.0), 1e-3);
  EXPECT_DOUBLE_EQ(dbm_to_watts(40.0), 10.0);
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
}

TEST(SystemParams, RejectsNonPositive) {
  SystemParams p = defaults();
  EXPECT_NO_THROW(p.validate());
  p.altitude = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = defaults();
  p.max_speed = -1.0;
  EXPECT_THROW(p.validate(), Error);
  p = defaults();
  p.duration = NAN;
  EXPECT_THROW(p.validate(), Error);
}

TEST(Topology, ValidatesOrderAndContent) {
  EXPECT_THROW(Topology({}), Error);
  EXPECT_THROW(Topology({2.0, 1.0}), Error);
  EXPECT_THROW(Topology({0.0, INFINITY}), Error);
  const Topology t = Topology::from_unsorted({5.0, -1.0, 3.0});
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.front(), -1.0);
  EXPECT_EQ(t.back(), 5.0);
  EXPECT_EQ(t[1], 3.0);
}

TEST(ReceivedPower, PeakAndSymmetry) {
  const SystemParams p = defaults();
  EXPECT_DOUBLE_EQ(received_power(p, 2.0, 2.0), 1e-2 / 25.0);
  EXPECT_DOUBLE_EQ(received_power(p, 2.0, 5.0), received_power(p, 2.0, -1.0));
  EXPECT_EQ(received_power_slope(p, 2.0, 2.0), 0.0);
}

TEST(ReceivedPower, SlopeMatchesFiniteDifference) {
  const SystemParams p = defaults();
  for (double x : {-7.0, -1.3, 0.4, 2.0, 6.5}) {
    const double h = 1e-6;
    const double fd = (received_power(p, 0.0, x + h) - received_power(p, 0.0, x - h)) / (2 * h);
    EXPECT_NEAR(received_power_slope(p, 0.0, x), fd, 1e-12);
  }
}

TEST(CruiseEnergy, MatchesQuadrature) {
  const SystemParams p = defaults();
  for (double w : {-20.0, -3.0, 0.0, 1.7, 8.0, 40.0}) {
    for (double v : {0.1, 1.0, 3.0}) {
      const double exact = cruise_energy(p, w, -2.0, 11.0, v);
      const double quad = adaptive_simpson(
          [&](double x) { return received_power(p, w, x) / v; }, -2.0, 11.0, 1e-16);
      EXPECT_NEAR(exact, quad, 1e-12 * exact) << "w=" << w << " v=" << v;
    }
  }
}

TEST(CruiseEnergy, LongSpansStayAccurate) {
  // atan difference across a very wide span, where the plain difference of
  // two atans loses digits.
  const SystemParams p = defaults();
  const double e = cruise_energy(p, 0.0, 1e6, 1e6 + 1.0, 1.0);
  const double quad = adaptive_simpson(
      [&](double x) { return received_power(p, 0.0, x); }, 1e6, 1e6 + 1.0, 1e-22);
  EXPECT_NEAR(e, quad, 1e-9 * quad);
}

TEST(CruiseEnergy, RejectsBadInput) {
  const SystemParams p = defaults();
  EXPECT_THROW(cruise_energy(p, 0.0, 0.0, 1.0, 0.0), Error);
  EXPECT_THROW(cruise_energy(p, 0.0, 2.0, 1.0, 1.0), Error);
  EXPECT_EQ(cruise_energy(p, 0.0, 1.0, 1.0, 1.0), 0.0);
}

TEST(HoverEnergy, IsPowerTimesDuration) {
  const SystemParams p = defaults();
  EXPECT_DOUBLE_EQ(hover_energy(p, 1.0, 4.0, 3.0), 3.0 * received_power(p, 1.0, 4.0));
  EXPECT_THROW(hover_energy(p, 1.0, 4.0, -1.0), Error);
}

TEST(MoveEnergy, DirectionIndependentAndHoverLimit) {
  const SystemParams p = defaults();
  const double fwd = move_energy(p, 3.0, 1.0, 6.0, 7.0);
  const double back = move_energy(p, 3.0, 6.0, 1.0, 7.0);
  EXPECT_NEAR(fwd, back, 1e-18);
  EXPECT_NEAR(fwd, cruise_energy(p, 3.0, 1.0, 6.0, 5.0 / 7.0), 1e-18);
  EXPECT_DOUBLE_EQ(move_energy(p, 3.0, 2.0, 2.0, 4.0), hover_energy(p, 3.0, 2.0, 4.0));
}

TEST(PowerLipschitz, BoundsSlopeTightly) {
  const SystemParams p = defaults();
  const double l = power_lipschitz(p);
  double worst = 0.0;
  for (int i = -20000; i <= 20000; ++i) {
    worst = std::max(worst, std::abs(received_power_slope(p, 0.0, i * 1e-3)));
  }
  EXPECT_LE(worst, l);
  EXPECT_GT(worst, l * (1.0 - 1e-6));
}

TEST(AdaptiveSimpson, Polynomial) {
  const double v = adaptive_simpson([](double x) { return x * x * x - x; }, 0.0, 2.0);
  EXPECT_NEAR(v, 2.0, 1e-12);
}
