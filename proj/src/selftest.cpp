#include "shf/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "shf/baselines.hpp"
#include "shf/oracle.hpp"
#include "shf/planner.hpp"
#include "shf/simplex_lp.hpp"

namespace shf {
namespace {

SystemParams default_params() {
  SystemParams p;
  p.beta0 = db_to_linear(-30.0);
  p.power = dbm_to_watts(40.0);
  return p;
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

SelftestCase single_node() {
  const SystemParams p = default_params();
  const Topology topo({3.0});
  const SolveReport r = solve_p1(p, topo);
  const double want = p.duration * p.gain() / (p.altitude * p.altitude);
  const double rel = std::abs(r.min_energy - want) / want;
  return {"single node optimum", rel <= 1e-9,
          "got " + num(r.min_energy) + ", want " + num(want)};
}

SelftestCase cruise_closed_form() {
  const SystemParams p = default_params();
  double worst = 0.0;
  for (double w : {-3.0, 0.0, 2.5, 9.0}) {
    const double exact = cruise_energy(p, w, 0.0, 6.0, 0.7);
    const double quad = adaptive_simpson(
        [&](double x) { return received_power(p, w, x) / 0.7; }, 0.0, 6.0, 1e-15);
    worst = std::max(worst, std::abs(exact - quad) / exact);
  }
  return {"cruise energy closed form", worst <= 1e-10, "worst rel " + num(worst)};
}

SelftestCase decomposition_identity() {
  const SystemParams p = default_params();
  const Topology topo({1.0, 4.0, 7.5, 12.0, 18.0});
  Trajectory t;
  t.push_back(Hover{0.5, 2.0});
  t.push_back(Cruise{0.5, 4.0, 0.4});
  t.push_back(Hover{4.0, 3.0});
  t.push_back(Cruise{4.0, 9.0, 1.0});
  t.push_back(Cruise{9.0, 11.0, 0.8});
  const Decomposition d = decompose(t, p);
  const EnergyVector e = energy_vector(t, topo, p);
  const EnergyVector a = energy_vector(d.max_speed, topo, p);
  const EnergyVector b = energy_vector(d.speed_free, topo, p);
  double worst = 0.0;
  for (std::size_t k = 0; k < topo.size(); ++k) {
    worst = std::max(worst, std::abs(e[k] - a[k] - b[k]));
  }
  return {"sweep plus remainder energy identity", worst <= 1e-12,
          "worst abs " + num(worst)};
}

SelftestCase maximizer_vs_grid() {
  const SystemParams p = default_params();
  const Topology topo({0.0, 6.0, 14.0});
  const std::vector<double> lambda{0.3, 0.2, 0.5};
  const Window w{-1.0, 15.0};
  const MaximizerSet m = global_maximizers(p, topo, lambda, w);
  double grid = -INFINITY;
  for (int i = 0; i <= 160000; ++i) {
    grid = std::max(grid, weighted_power(p, topo, lambda, w.lo + i * 1e-4));
  }
  const double rel = (grid - m.value) / grid;
  return {"inner maximizer against dense grid", rel <= 1e-8,
          "rel shortfall " + num(rel)};
}

SelftestCase small_lp() {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3: optimum 11 at (3, 1).
  LpProblem lp;
  lp.objective = {3.0, 2.0};
  lp.a_ub = {{1.0, 1.0}, {1.0, 3.0}, {1.0, 0.0}};
  lp.b_ub = {4.0, 6.0, 3.0};
  const LpResult r = solve_lp(lp);
  const bool ok = r.status == LpStatus::kOptimal && std::abs(r.objective - 11.0) < 1e-9;
  return {"dense simplex", ok, "objective " + num(r.objective)};
}

SelftestCase ordering() {
  const SystemParams p = default_params();
  const Topology topo({2.0, 9.0, 15.0});
  const SolveReport opt = solve_p1(p, topo);
  const HeuristicResult h = heuristic_shf(p, topo);
  const double ub = speed_free_upper_bound(p, topo);
  const bool ok = h.min_energy <= opt.min_energy + 1e-9 && opt.min_energy <= ub + 1e-12 &&
                  opt.trajectory.is_shf(p) && opt.certificate.gap <= 1e-4;
  return {"heuristic <= optimal <= upper bound", ok,
          num(h.min_energy) + " <= " + num(opt.min_energy) + " <= " + num(ub)};
}

SelftestCase dp_single_node() {
  const SystemParams p = default_params();
  const Topology topo({5.0});
  const GridSpec g = GridSpec::covering(topo, 0.05, 0.05);
  const DpResult r = dp_weighted_max(p, topo, SimplexWeights::uniform(1), g);
  const double want = p.duration * p.gain() / (p.altitude * p.altitude);
  return {"weighted DP single node", std::abs(r.value - want) <= 1e-12 * want,
          "got " + num(r.value)};
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  const std::vector<std::function<SelftestCase()>> cases{
      single_node, cruise_closed_form, decomposition_identity, maximizer_vs_grid,
      small_lp,    ordering,           dp_single_node};
  std::vector<SelftestCase> out;
  for (const auto& c : cases) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"(case threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace shf
