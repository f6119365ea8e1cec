#include "shf/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

namespace shf {
namespace {

// Below this gap a sub-max cruise is treated as a max-speed one; the
// residual speed V v / (V - v) would otherwise overflow.
constexpr double kResidualSpeedGap = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_row(double t, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", t, x);
  return buf;
}

}  // namespace

double segment_start(const Segment& s) {
  return std::visit(Overloaded{[](const Hover& h) { return h.x; },
                               [](const Cruise& c) { return c.x_start; }},
                    s);
}

double segment_end(const Segment& s) {
  return std::visit(Overloaded{[](const Hover& h) { return h.x; },
                               [](const Cruise& c) { return c.x_end; }},
                    s);
}

double segment_seconds(const Segment& s) {
  return std::visit(Overloaded{[](const Hover& h) { return h.tau; },
                               [](const Cruise& c) { return c.seconds(); }},
                    s);
}

void Trajectory::append(const Trajectory& other) {
  segments_.insert(segments_.end(), other.segments_.begin(),
                   other.segments_.end());
}

double Trajectory::start() const {
  if (segments_.empty()) throw_invalid("empty trajectory has no start");
  return segment_start(segments_.front());
}

double Trajectory::end() const {
  if (segments_.empty()) throw_invalid("empty trajectory has no end");
  return segment_end(segments_.back());
}

double Trajectory::duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += segment_seconds(s);
  return total;
}

std::size_t Trajectory::hover_count() const {
  return static_cast<std::size_t>(
      std::count_if(segments_.begin(), segments_.end(), [](const Segment& s) {
        return std::holds_alternative<Hover>(s);
      }));
}

double Trajectory::position_at(double t) const {
  if (segments_.empty()) throw_invalid("empty trajectory has no position");
  double t0 = 0.0;
  for (const auto& s : segments_) {
    const double len = segment_seconds(s);
    if (t <= t0 + len) {
      if (const auto* c = std::get_if<Cruise>(&s)) {
        const double x = c->x_start + c->speed * std::max(0.0, t - t0);
        return std::min(x, c->x_end);
      }
      return std::get<Hover>(s).x;
    }
    t0 += len;
  }
  return end();
}

void Trajectory::validate(const SystemParams& params, double tol) const {
  const double vmax = params.max_speed * (1.0 + tol);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (const auto* h = std::get_if<Hover>(&s)) {
      if (!(h->tau >= 0.0)) throw_invalid("hover duration must be >= 0");
    } else {
      const auto& c = std::get<Cruise>(s);
      if (c.x_start > c.x_end) {
        throw_invalid("cruise segment " + std::to_string(i) +
                      " runs backwards");
      }
      if (!(c.speed > 0.0) || c.speed > vmax) {
        throw_invalid("cruise segment " + std::to_string(i) +
                      " violates the speed limit");
      }
    }
    if (i > 0) {
      const double prev = segment_end(segments_[i - 1]);
      const double cur = segment_start(s);
      if (std::abs(prev - cur) > 1e-9 * std::max(1.0, std::abs(cur))) {
        throw_invalid("segments " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " are not continuous");
      }
    }
  }
}

bool Trajectory::is_shf(const SystemParams& params, double tol) const {
  for (const auto& s : segments_) {
    if (const auto* c = std::get_if<Cruise>(&s)) {
      if (std::abs(c->speed - params.max_speed) > tol * params.max_speed) {
        return false;
      }
    }
  }
  return true;
}

double HoverSchedule::total_duration() const {
  return std::accumulate(durations.begin(), durations.end(), 0.0);
}

void HoverSchedule::canonicalize(double merge_tol) {
  if (points.size() != durations.size()) {
    throw_invalid("hover schedule points and durations differ in length");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return points[a] < points[b];
  });
  std::vector<double> p;
  std::vector<double> d;
  for (auto i : order) {
    if (durations[i] < 0.0) throw_invalid("hover duration must be >= 0");
    if (durations[i] == 0.0) continue;
    if (!p.empty() && points[i] - p.back() < merge_tol) {
      d.back() += durations[i];
    } else {
      p.push_back(points[i]);
      d.push_back(durations[i]);
    }
  }
  points = std::move(p);
  durations = std::move(d);
}

EnergyVector energy_vector(const Trajectory& traj, const Topology& topo,
                           const SystemParams& params) {
  EnergyVector e(topo.size(), 0.0);
  for (const auto& s : traj.segments()) {
    for (std::size_t k = 0; k < topo.size(); ++k) {
      const double w = topo[k];
      e[k] += std::visit(
          Overloaded{
              [&](const Hover& h) {
                return hover_energy(params, w, h.x, h.tau);
              },
              [&](const Cruise& c) {
                return cruise_energy(params, w, c.x_start, c.x_end, c.speed);
              }},
          s);
    }
  }
  return e;
}

Decomposition decompose(const Trajectory& traj, const SystemParams& params) {
  traj.validate(params);
  Decomposition out;
  if (traj.empty()) return out;
  const double v_max = params.max_speed;
  const double x_i = traj.start();
  const double x_f = traj.end();
  if (x_f > x_i) out.max_speed.push_back(Cruise{x_i, x_f, v_max});
  for (const auto& s : traj.segments()) {
    if (const auto* h = std::get_if<Hover>(&s)) {
      out.speed_free.push_back(*h);
      continue;
    }
    const auto& c = std::get<Cruise>(s);
    if (c.x_start == c.x_end) continue;
    const double v = std::min(c.speed, v_max);
    if (v_max - v < kResidualSpeedGap) continue;
    out.speed_free.push_back(
        Cruise{c.x_start, c.x_end, v_max * v / (v_max - v)});
  }
  return out;
}

Trajectory assemble_shf(const HoverSchedule& schedule,
                        const SystemParams& params) {
  const double v = params.max_speed;
  if (schedule.x_f < schedule.x_i) throw_invalid("window must have x_i <= x_f");
  if (schedule.points.size() != schedule.durations.size()) {
    throw_invalid("hover schedule points and durations differ in length");
  }
  const double total =
      (schedule.x_f - schedule.x_i) / v + schedule.total_duration();
  if (std::abs(total - params.duration) > 1e-9) {
    throw_invalid("hover schedule does not fill the mission duration");
  }
  std::vector<std::size_t> order(schedule.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return schedule.points[a] < schedule.points[b];
  });

  Trajectory traj;
  double pos = schedule.x_i;
  for (auto i : order) {
    const double p = schedule.points[i];
    const double tau = schedule.durations[i];
    if (p < schedule.x_i - 1e-9 || p > schedule.x_f + 1e-9) {
      throw_invalid("hover point lies outside the window");
    }
    if (tau < 0.0) throw_invalid("hover duration must be >= 0");
    if (tau == 0.0) continue;
    if (p > pos) {
      traj.push_back(Cruise{pos, p, v});
      pos = p;
    }
    traj.push_back(Hover{pos, tau});
  }
  if (schedule.x_f > pos) traj.push_back(Cruise{pos, schedule.x_f, v});
  if (traj.empty()) traj.push_back(Hover{schedule.x_i, 0.0});
  return traj;
}

TraceRows trajectory_knots(const Trajectory& traj) {
  TraceRows knots;
  if (traj.empty()) return knots;
  double t = 0.0;
  knots.emplace_back(0.0, traj.start());
  for (const auto& s : traj.segments()) {
    t += segment_seconds(s);
    knots.emplace_back(t, segment_end(s));
  }
  return knots;
}

TraceRows sample_polyline(const TraceRows& knots, double dt) {
  if (!(dt > 0.0)) throw_invalid("trace step must be positive");
  TraceRows rows;
  if (knots.empty()) return rows;
  const double t_end = knots.back().first;
  std::size_t seg = 0;
  auto position = [&](double t) {
    while (seg + 1 < knots.size() && knots[seg + 1].first < t) ++seg;
    if (seg + 1 >= knots.size()) return knots.back().second;
    const auto [t0, x0] = knots[seg];
    const auto [t1, x1] = knots[seg + 1];
    if (t1 <= t0) return x1;
    return x0 + (x1 - x0) * (t - t0) / (t1 - t0);
  };
  // Merge the regular grid with the knot times, both ascending.
  const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  std::size_t i = 0;
  std::size_t j = 0;
  while (i <= n || j < knots.size()) {
    const double tg = i <= n ? static_cast<double>(i) * dt : INFINITY;
    const double tk = j < knots.size() ? knots[j].first : INFINITY;
    double t;
    double x;
    if (tk <= tg) {
      t = tk;
      x = knots[j].second;
      ++j;
      if (tk == tg) ++i;
    } else {
      t = tg;
      x = position(tg);
      ++i;
    }
    if (t > t_end) continue;
    if (!rows.empty() && t <= rows.back().first) {
      rows.back().second = x;
      continue;
    }
    rows.emplace_back(t, x);
  }
  return rows;
}

TraceRows sample_trace(const Trajectory& traj, double dt) {
  return sample_polyline(trajectory_knots(traj), dt);
}

void write_trace_csv(std::ostream& out, const TraceRows& rows) {
  out << "t_seconds,x_meters\n";
  for (const auto& [t, x] : rows) out << format_row(t, x);
}

}  // namespace shf
