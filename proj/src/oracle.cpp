#include "sweep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sweep/errors.hpp"

namespace sweep::oracle {
namespace {

double constraint_value(const Constraint& c, const std::vector<Vec2>& config,
                        const SimScene& scene) {
  if (c.kind == Constraint::Kind::AgentObstacle) {
    return distance(config[c.a], scene.obstacle_center[c.b]) -
           (scene.agent_radius[c.a] + scene.obstacle_radius[c.b]);
  }
  return distance(config[c.a], config[c.b]) -
         (scene.agent_radius[c.a] + scene.agent_radius[c.b]);
}

}  // namespace

double SimScene::length_scale() const {
  double s = 1.0;
  for (const Vec2& p : start) s = std::max(s, distance(p, destination));
  for (std::size_t k = 0; k < obstacle_center.size(); ++k) {
    s = std::max(s, distance(obstacle_center[k], destination) + obstacle_radius[k]);
  }
  return s;
}

SimScene SimScene::from(const SingleScenario& sc) {
  SimScene s;
  s.horizon = sc.horizon;
  s.tau = sc.tau;
  s.destination = sc.destination;
  s.start = {sc.start};
  s.agent_radius = {sc.agent_radius};
  s.speed = {sc.nominal_speed};
  s.obstacle_center = {sc.obstacle_center};
  s.obstacle_radius = {sc.obstacle_radius};
  s.constraints = {{Constraint::Kind::AgentObstacle, 0, 0}};
  return s;
}

SimScene SimScene::from(const CorridorScenario& sc) {
  SimScene s;
  s.horizon = sc.horizon;
  s.tau = sc.tau;
  s.destination = sc.destination;
  s.frozen_axis = true;
  s.axis = sc.axis;
  for (int i = 0; i < sc.agent_count(); ++i) {
    s.start.push_back(sc.agents[i].start);
    s.agent_radius.push_back(sc.agents[i].radius);
    s.speed.push_back(sc.speeds[i]);
  }
  for (int i = 0; i < sc.agent_count(); ++i) {
    for (int j = i + 1; j < sc.agent_count(); ++j) {
      s.constraints.push_back({Constraint::Kind::AgentPair, i, j});
    }
  }
  return s;
}

SimScene SimScene::from(const Scenario& sc) {
  return std::visit([](const auto& v) { return SimScene::from(v); }, sc);
}

std::vector<Vec2> desired_velocity(const std::vector<Vec2>& config,
                                   const std::vector<double>& controls, const SimScene& scene) {
  const int n = scene.agent_count();
  std::vector<Vec2> u(n);
  for (int i = 0; i < n; ++i) {
    const double mag = controls[i] * scene.speed[i];
    if (scene.frozen_axis) {
      u[i] = mag * scene.axis;
      continue;
    }
    const Vec2 d = config[i] - scene.destination;
    const double nd = norm(d);
    if (nd == 0.0) {
      u[i] = {0.0, 0.0};  // limit convention at the destination
    } else {
      u[i] = (-mag / nd) * d;
    }
  }
  return u;
}

std::vector<Vec2> project_admissible(std::vector<Vec2> config, const SimScene& scene,
                                     const SimConfig& cfg, std::vector<double>* corrections) {
  if (corrections) corrections->assign(scene.constraints.size(), 0.0);
  for (int pass = 0; pass < cfg.projection_max_iters; ++pass) {
    double worst = 0.0;
    for (std::size_t k = 0; k < scene.constraints.size(); ++k) {
      const Constraint& c = scene.constraints[k];
      const double v = constraint_value(c, config, scene);
      if (v >= -cfg.projection_tol) continue;
      worst = std::max(worst, -v);
      if (c.kind == Constraint::Kind::AgentObstacle) {
        const Vec2 n = unit_direction(config[c.a], scene.obstacle_center[c.b]);
        config[c.a] -= v * n;  // radially out to the inflated radius
        if (corrections) (*corrections)[k] += -v;
      } else {
        // Symmetric split: each agent contributes half the separation.
        const Vec2 n = unit_direction(config[c.a], config[c.b]);
        config[c.a] -= 0.5 * v * n;
        config[c.b] += 0.5 * v * n;
        if (corrections) (*corrections)[k] += -0.5 * v;
      }
    }
    if (worst == 0.0) return config;
  }
  // One more look: fail only if a violation is still outstanding.
  for (const Constraint& c : scene.constraints) {
    if (constraint_value(c, config, scene) < -cfg.projection_tol) {
      throw ModelError(Fault::ProjectionStalled,
                       "projection did not converge within max iterations");
    }
  }
  return config;
}

std::vector<Vec2> catching_up_step(const std::vector<Vec2>& config,
                                   const std::vector<double>& controls, const SimScene& scene,
                                   double h, const SimConfig& cfg, std::vector<double>* eta_out) {
  const int n = scene.agent_count();
  const double contact_tol = 1e-7 * scene.length_scale();
  const std::vector<Vec2> u = desired_velocity(config, controls, scene);

  // During obstacle contact the model swings the agent along the circle at
  // speed |a| (the solver's normalization) instead of the raw projected
  // desired velocity; the tangent side follows the pull of the destination,
  // head-on ties break counterclockwise.
  std::vector<Vec2> v = u;
  std::vector<int> swinging(n, -1);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < scene.obstacle_center.size(); ++k) {
      const double gap = distance(config[i], scene.obstacle_center[k]) -
                         (scene.agent_radius[i] + scene.obstacle_radius[k]);
      if (gap > contact_tol) continue;
      const Vec2 nrm = unit_direction(config[i], scene.obstacle_center[k]);
      if (dot(u[i], nrm) >= 0.0) continue;  // not pushing inward: free to leave
      const double side = cross(nrm, scene.destination - config[i]);
      const double ori = (side < 0.0) ? -1.0 : 1.0;
      v[i] = std::abs(controls[i]) * ori * perp(nrm);
      swinging[i] = static_cast<int>(k);
    }
  }

  std::vector<Vec2> tentative(n);
  for (int i = 0; i < n; ++i) {
    tentative[i] = config[i] + h * v[i];
    if (swinging[i] >= 0) {
      // Chord steps creep outward; renormalize to stay on the contact circle.
      const int k = swinging[i];
      const double radius = scene.agent_radius[i] + scene.obstacle_radius[k];
      tentative[i] = scene.obstacle_center[k] +
                     radius * unit_direction(tentative[i], scene.obstacle_center[k]);
    }
  }

  std::vector<double> corrections;
  std::vector<Vec2> next = project_admissible(std::move(tentative), scene, cfg, &corrections);

  if (eta_out) {
    eta_out->assign(scene.constraints.size(), 0.0);
    for (std::size_t k = 0; k < scene.constraints.size(); ++k) {
      const Constraint& c = scene.constraints[k];
      if (c.kind == Constraint::Kind::AgentObstacle) {
        // Multiplier from the raw desired step: the penetration the projection
        // would remove, per unit time.
        const Vec2 raw = config[c.a] + h * u[c.a];
        const double depth = (scene.agent_radius[c.a] + scene.obstacle_radius[c.b]) -
                             distance(raw, scene.obstacle_center[c.b]);
        (*eta_out)[k] = std::max(0.0, depth) / h;
      } else {
        (*eta_out)[k] = corrections[k] / h;
      }
    }
  }
  return next;
}

SimTrace simulate(const SimScene& scene, const std::vector<double>& controls,
                  const SimConfig& cfg) {
  if (static_cast<int>(controls.size()) != scene.agent_count()) {
    throw ModelError(Fault::BadArguments, "one control per agent required");
  }
  if (!(cfg.step > 0.0) || cfg.step > scene.horizon / 10.0) {
    throw ModelError(Fault::BadArguments, "step must satisfy 0 < h <= T/10");
  }
  SimTrace trace;
  std::vector<Vec2> config = project_admissible(scene.start, scene, cfg);
  const double active_tol = 1e-6 * scene.length_scale();

  auto record = [&](double t, const std::vector<Vec2>& x, const std::vector<double>& eta) {
    trace.times.push_back(t);
    trace.positions.push_back(x);
    std::vector<std::uint8_t> act(scene.constraints.size(), 0);
    for (std::size_t k = 0; k < scene.constraints.size(); ++k) {
      act[k] = std::abs(constraint_value(scene.constraints[k], x, scene)) <= active_tol;
    }
    trace.active.push_back(std::move(act));
    trace.eta_hat.push_back(eta);
  };

  record(0.0, config, std::vector<double>(scene.constraints.size(), 0.0));
  double t = 0.0;
  long step_index = 0;
  std::vector<double> eta;
  while (t < scene.horizon - 1e-12) {
    const double h = std::min(cfg.step, scene.horizon - t);
    config = catching_up_step(config, controls, scene, h, cfg, &eta);
    t += h;
    ++step_index;
    if (step_index % cfg.sample_stride == 0 || t >= scene.horizon - 1e-12) {
      record(t, config, eta);
    }
  }
  double energy = 0.0;
  for (double a : controls) energy += a * a;
  trace.running_cost = scene.tau / 2.0 * energy * scene.horizon;
  return trace;
}

double simulated_cost(const SimTrace& trace, const SimScene& scene,
                      const std::vector<double>& controls) {
  if (trace.positions.empty()) {
    throw ModelError(Fault::BadArguments, "empty trace");
  }
  const std::vector<Vec2>& xT = trace.positions.back();
  double terminal = 0.0;
  for (int i = 0; i < scene.agent_count(); ++i) {
    const double d = distance(xT[i], scene.destination);
    terminal += 0.5 * d * d;
  }
  double energy = 0.0;
  for (double a : controls) energy += a * a;
  return terminal + scene.tau * scene.horizon / 2.0 * energy;
}

void write_trace_csv(const SimTrace& trace, const SimScene& scene, std::ostream& out) {
  out << "t";
  for (int i = 0; i < scene.agent_count(); ++i) {
    out << ",x" << (i + 1) << ",y" << (i + 1);
  }
  out << ",active_flags";
  for (std::size_t k = 0; k < scene.constraints.size(); ++k) {
    out << ",eta_hat_" << (k + 1);
  }
  out << "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    out << buf;
  };
  for (std::size_t row = 0; row < trace.times.size(); ++row) {
    num(trace.times[row]);
    for (const Vec2& p : trace.positions[row]) {
      out << ",";
      num(p.x);
      out << ",";
      num(p.y);
    }
    out << ",";
    for (std::size_t k = 0; k < trace.active[row].size(); ++k) {
      if (k) out << ";";
      out << static_cast<int>(trace.active[row][k]);
    }
    for (double e : trace.eta_hat[row]) {
      out << ",";
      num(e);
    }
    out << "\n";
  }
}

GridResult grid_refine_search(const std::function<double(const std::vector<double>&)>& objective,
                              std::vector<double> lo, std::vector<double> hi, int levels) {
  const std::size_t dims = lo.size();
  if (dims == 0 || dims != hi.size()) {
    throw ModelError(Fault::BadArguments, "lo/hi dimension mismatch");
  }
  for (std::size_t d = 0; d < dims; ++d) {
    if (!(lo[d] < hi[d])) throw ModelError(Fault::BadArguments, "need lo < hi per dimension");
  }
  if (levels < 1) throw ModelError(Fault::BadArguments, "levels must be >= 1");

  constexpr int kPoints = 101;
  const std::vector<double> lo0 = lo;
  const std::vector<double> hi0 = hi;
  GridResult best;
  best.controls.assign(dims, 0.0);
  best.value = std::numeric_limits<double>::infinity();

  std::vector<double> point(dims);
  for (int level = 0; level < levels; ++level) {
    std::vector<int> idx(dims, 0);
    bool done = false;
    GridResult level_best;
    level_best.value = std::numeric_limits<double>::infinity();
    while (!done) {
      for (std::size_t d = 0; d < dims; ++d) {
        point[d] = lo[d] + (hi[d] - lo[d]) * idx[d] / double(kPoints - 1);
      }
      const double v = objective(point);
      if (v < level_best.value) {
        level_best.value = v;
        level_best.controls = point;
      }
      // odometer increment, last dimension fastest
      for (std::size_t d = dims; d-- > 0;) {
        if (++idx[d] < kPoints) break;
        idx[d] = 0;
        if (d == 0) done = true;
      }
    }
    if (level_best.value < best.value) best = level_best;
    // zoom x10 around the incumbent, clamped to the original box
    for (std::size_t d = 0; d < dims; ++d) {
      const double half = (hi[d] - lo[d]) / 20.0;
      double nlo = best.controls[d] - half;
      double nhi = best.controls[d] + half;
      nlo = std::max(nlo, lo0[d]);
      nhi = std::min(nhi, hi0[d]);
      if (!(nlo < nhi)) {
        nlo = lo0[d];
        nhi = hi0[d];
      }
      lo[d] = nlo;
      hi[d] = nhi;
    }
  }
  return best;
}

}  // namespace sweep::oracle
