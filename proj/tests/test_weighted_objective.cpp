#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace shf;
using shf::testing::default_params;

TEST(SimplexWeights, Validation) {
  EXPECT_THROW(SimplexWeights({}), Error);
  EXPECT_THROW(SimplexWeights({0.5, 0.6}), Error);
  EXPECT_THROW(SimplexWeights({-0.1, 1.1}), Error);
  EXPECT_NO_THROW(SimplexWeights({0.25, 0.75}));
  const auto v = SimplexWeights::vertex(3, 2);
  EXPECT_EQ(v[2], 1.0);
  EXPECT_EQ(SimplexWeights::uniform(4)[1], 0.25);
}

TEST(StationaryPoints, TwoNodesAgainstFineGrid) {
  const SystemParams p = default_params();
  const Topology topo({0.0, 10.0});
  const std::vector<double> lambda{0.5, 0.5};
  const Window w{0.0, 10.0};
  const auto roots = stationary_points(p, topo, lambda, w);
  // Symmetric pair of maxima and the midpoint minimum.
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[1], 5.0, 1e-9);
  EXPECT_NEAR(roots[0] + roots[2], 10.0, 1e-9);

  // Reference argmax on a 1e-7 m grid around the left maximum.
  double best_x = 0.0, best_f = -1.0;
  for (long i = 0; i <= 20000000; ++i) {
    const double x = 0.0 + i * 1e-7;
    const double f = weighted_power(p, topo, lambda, x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  EXPECT_NEAR(roots[0], best_x, 1e-6);
}

TEST(GlobalMaximizers, MatchDenseGrid) {
  const SystemParams p = default_params();
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng.below(5);
    const Topology topo = shf::testing::random_topology(rng, k, 20.0);
    const auto lambda = shf::testing::random_simplex(rng, k);
    double a = rng.uniform(-2.0, 22.0), b = rng.uniform(-2.0, 22.0);
    if (a > b) std::swap(a, b);
    const Window w{a, b};
    const MaximizerSet m = global_maximizers(p, topo, lambda, w);
    const double ref = shf::testing::dense_grid_max(p, topo, lambda, w, 1e-4);
    EXPECT_GE(m.value, ref * (1.0 - 1e-12));
    EXPECT_LE(m.points.size(), 2 * k + 1);
    for (double x : m.points) EXPECT_TRUE(w.contains(x, 1e-12));
  }
}

TEST(GlobalMaximizers, VertexWeightPeaksAtNode) {
  const SystemParams p = default_params();
  const Topology topo({2.0, 9.0});
  const auto v = SimplexWeights::vertex(2, 1);
  const MaximizerSet m = global_maximizers(p, topo, v.values(), Window{0.0, 12.0});
  ASSERT_EQ(m.points.size(), 1u);
  EXPECT_NEAR(m.argmax, 9.0, 1e-11);
}

TEST(GlobalMaximizers, WindowEdgeWins) {
  const SystemParams p = default_params();
  const Topology topo({0.0});
  const std::vector<double> l{1.0};
  const MaximizerSet m = global_maximizers(p, topo, l, Window{3.0, 8.0});
  EXPECT_EQ(m.argmax, 3.0);
  const MaximizerSet point = global_maximizers(p, topo, l, Window{4.0, 4.0});
  EXPECT_EQ(point.argmax, 4.0);
}

TEST(WindowMaximizer, AgreesWithGlobalMaximizers) {
  const SystemParams p = default_params();
  Rng rng(99);
  const Topology topo = shf::testing::random_topology(rng, 5, 20.0);
  const WindowMaximizer wm(p, topo, Window{topo.front(), topo.back()});
  for (int i = 0; i < 200; ++i) {
    const auto lambda = shf::testing::random_simplex(rng, 5);
    const MaximizerSet a = wm.maximize(lambda, 1e-9);
    const MaximizerSet b =
        global_maximizers(p, topo, lambda, Window{topo.front(), topo.back()});
    EXPECT_NEAR(a.value, b.value, 1e-15 * b.value);
    EXPECT_NEAR(a.argmax, b.argmax, 1e-9);
  }
}

TEST(GlobalMaximizers, RejectsMismatchedWeights) {
  const SystemParams p = default_params();
  const Topology topo({0.0, 1.0});
  const std::vector<double> l{1.0};
  EXPECT_THROW(global_maximizers(p, topo, l, Window{0, 1}), Error);
  EXPECT_THROW(stationary_points(p, topo, std::vector<double>{0.5, 0.5}, Window{1, 0}), Error);
}
