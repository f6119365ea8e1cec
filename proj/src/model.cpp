#include "shf/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shf {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_step(const std::function<double(double)>& f, double a,
                    double b, double fa, double fm, double fb, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

void SystemParams::validate() const {
  if (!positive_finite(beta0)) throw_invalid("beta0 must be positive");
  if (!positive_finite(power)) throw_invalid("power must be positive");
  if (!positive_finite(altitude)) throw_invalid("altitude must be positive");
  if (!positive_finite(max_speed)) throw_invalid("max_speed must be positive");
  if (!positive_finite(duration)) throw_invalid("duration must be positive");
}

Topology::Topology(std::vector<double> positions)
    : positions_(std::move(positions)) {
  if (positions_.empty()) throw_invalid("topology must contain a node");
  for (std::size_t k = 0; k < positions_.size(); ++k) {
    if (!std::isfinite(positions_[k])) {
      throw_invalid("node position " + std::to_string(k) + " is not finite");
    }
    if (k > 0 && positions_[k] < positions_[k - 1]) {
      throw_invalid("node positions must be sorted non-decreasing");
    }
  }
}

Topology Topology::from_unsorted(std::vector<double> positions) {
  std::sort(positions.begin(), positions.end());
  return Topology(std::move(positions));
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double received_power(const SystemParams& params, double node_x,
                      double uav_x) {
  const double d = uav_x - node_x;
  const double h = params.altitude;
  return params.gain() / (d * d + h * h);
}

double received_power_slope(const SystemParams& params, double node_x,
                            double uav_x) {
  const double d = uav_x - node_x;
  const double h = params.altitude;
  const double den = d * d + h * h;
  return -2.0 * d * params.gain() / (den * den);
}

double cruise_energy(const SystemParams& params, double node_x, double a,
                     double b, double speed) {
  if (!(speed > 0.0)) throw_invalid("cruise speed must be positive");
  if (a > b) throw_invalid("cruise segment must satisfy a <= b");
  if (a == b) return 0.0;
  const double h = params.altitude;
  // atan(u) - atan(v) = atan((u - v) / (1 + u v)) when u v > -1; this keeps
  // precision for short segments far from the node.
  const double u = (b - node_x) / h;
  const double v = (a - node_x) / h;
  double diff;
  if (u * v > -1.0) {
    diff = std::atan((u - v) / (1.0 + u * v));
  } else {
    diff = std::atan(u) - std::atan(v);
  }
  return params.gain() / (speed * h) * diff;
}

double hover_energy(const SystemParams& params, double node_x, double hover_x,
                    double tau) {
  if (tau < 0.0) throw_invalid("hover duration must be non-negative");
  return tau * received_power(params, node_x, hover_x);
}

double move_energy(const SystemParams& params, double node_x, double x0,
                   double x1, double seconds) {
  if (seconds <= 0.0) return 0.0;
  if (x0 == x1) return hover_energy(params, node_x, x0, seconds);
  const double lo = std::min(x0, x1);
  const double hi = std::max(x0, x1);
  return cruise_energy(params, node_x, lo, hi, (hi - lo) / seconds);
}

double power_lipschitz(const SystemParams& params) {
  const double h = params.altitude;
  return params.gain() * (3.0 * std::sqrt(3.0) / 8.0) / (h * h * h);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol,
                      max_depth);
}

}  // namespace shf
