#include "sweep/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "sweep/errors.hpp"

namespace sweep {
namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ModelError(Fault::MalformedDocument, "scenario document is not a JSON object");
  }
  return doc;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ModelError(Fault::MalformedDocument,
                       "unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ModelError(Fault::MissingField, "missing \"" + key + "\" in " + where);
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ModelError(Fault::MalformedDocument, "\"" + key + "\" must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ModelError(Fault::NonFinite, "\"" + key + "\" is not finite");
  }
  return x;
}

Vec2 require_point(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) {
    throw ModelError(Fault::MissingField, "missing \"" + key + "\" in " + where);
  }
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ModelError(Fault::MalformedDocument, "\"" + key + "\" must be [x, y]");
  }
  Vec2 p{v[0].get<double>(), v[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ModelError(Fault::NonFinite, "\"" + key + "\" has a non-finite coordinate");
  }
  return p;
}

std::string require_kind(const json& doc) {
  if (!doc.contains("kind")) {
    throw ModelError(Fault::MissingField, "missing \"kind\"");
  }
  if (!doc.at("kind").is_string()) {
    throw ModelError(Fault::MalformedDocument, "\"kind\" must be a string");
  }
  return doc.at("kind").get<std::string>();
}

double scene_scale(const CorridorScenario& sc) {
  double s = 1.0;
  for (const auto& a : sc.agents) {
    s = std::max(s, distance(a.start, sc.destination));
  }
  return s;
}

}  // namespace

void validate(const SingleScenario& sc) {
  for (double v : {sc.horizon, sc.agent_radius, sc.obstacle_radius, sc.tau,
                   sc.start.x, sc.start.y, sc.destination.x, sc.destination.y,
                   sc.obstacle_center.x, sc.obstacle_center.y}) {
    if (!std::isfinite(v)) throw ModelError(Fault::NonFinite, "scenario field not finite");
  }
  if (sc.horizon <= 0.0) throw ModelError(Fault::BadArguments, "horizon must be positive");
  if (sc.agent_radius <= 0.0 || sc.obstacle_radius <= 0.0) {
    throw ModelError(Fault::BadArguments, "radii must be positive");
  }
  if (sc.tau < 0.0) throw ModelError(Fault::BadArguments, "tau must be nonnegative");
  const double inflated = sc.inflated_radius();
  if (distance(sc.start, sc.obstacle_center) < inflated) {
    throw ModelError(Fault::InfeasibleStart, "start overlaps the inflated obstacle");
  }
  if (distance(sc.destination, sc.obstacle_center) <= inflated) {
    throw ModelError(Fault::DestinationInsideObstacle,
                     "destination inside the inflated obstacle");
  }
}

void validate(const CorridorScenario& sc) {
  const int n = sc.agent_count();
  if (n != 2 && n != 3) throw ModelError(Fault::BadAgentCount, "agent count must be 2 or 3");
  if (sc.horizon <= 0.0) throw ModelError(Fault::BadArguments, "horizon must be positive");
  if (sc.tau < 0.0) throw ModelError(Fault::BadArguments, "tau must be nonnegative");
  const double scale = scene_scale(sc);
  for (int i = 0; i < n; ++i) {
    if (sc.agents[i].radius <= 0.0) throw ModelError(Fault::BadArguments, "radii must be positive");
    if (sc.rho0[i] <= 0.0) {
      throw ModelError(Fault::AgentPastDestination,
                       "all agents must start before the destination");
    }
    // Reconstruction must land back on the start point, i.e. collinearity.
    if (distance(sc.position_for_rho(sc.rho0[i]), sc.agents[i].start) > 1e-9 * scale) {
      throw ModelError(Fault::NotCollinear, "agent starts not collinear with destination");
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (sc.rho0[i] - sc.rho0[i + 1] < sc.pair_radius(i, i + 1) - 1e-9 * scale) {
      throw ModelError(Fault::InitialOverlap, "initial gap smaller than radii sum");
    }
  }
}

std::pair<Vec2, std::vector<double>> corridor_reduce(const std::vector<Vec2>& positions,
                                                     Vec2 destination) {
  double far = 0.0;
  std::size_t far_idx = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double d = distance(positions[i], destination);
    if (d > far) {
      far = d;
      far_idx = i;
    }
  }
  // Everything at the destination: axis is arbitrary, coordinates all zero.
  if (far == 0.0) {
    return {Vec2{1.0, 0.0}, std::vector<double>(positions.size(), 0.0)};
  }
  const Vec2 e = unit_direction(destination, positions[far_idx]);
  std::vector<double> rho(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec2 d = destination - positions[i];
    if (std::abs(cross(d, e)) > 1e-9 * far) {
      throw ModelError(Fault::NotCollinear, "positions not collinear with destination");
    }
    rho[i] = dot(d, e);
  }
  return {e, rho};
}

SingleScenario parse_single(std::string_view text) {
  const json doc = parse_document(text);
  if (require_kind(doc) != "single") {
    throw ModelError(Fault::MalformedDocument, "expected kind \"single\"");
  }
  reject_unknown_keys(doc, {"kind", "T", "start", "destination", "obstacle",
                            "agent_radius", "tau"}, "single scenario");
  SingleScenario sc;
  sc.horizon = require_number(doc, "T", "single scenario");
  sc.start = require_point(doc, "start", "single scenario");
  sc.destination = require_point(doc, "destination", "single scenario");
  if (!doc.contains("obstacle")) {
    throw ModelError(Fault::MissingField, "missing \"obstacle\"");
  }
  const json& obs = doc.at("obstacle");
  if (!obs.is_object()) throw ModelError(Fault::MalformedDocument, "\"obstacle\" must be an object");
  reject_unknown_keys(obs, {"center", "radius"}, "obstacle");
  sc.obstacle_center = require_point(obs, "center", "obstacle");
  sc.obstacle_radius = require_number(obs, "radius", "obstacle");
  sc.agent_radius = require_number(doc, "agent_radius", "single scenario");
  sc.tau = require_number(doc, "tau", "single scenario");
  validate(sc);
  sc.nominal_speed = distance(sc.destination, sc.start) / sc.horizon;
  return sc;
}

CorridorScenario parse_corridor(std::string_view text) {
  const json doc = parse_document(text);
  if (require_kind(doc) != "corridor") {
    throw ModelError(Fault::MalformedDocument, "expected kind \"corridor\"");
  }
  reject_unknown_keys(doc, {"kind", "T", "destination", "tau", "agents"}, "corridor scenario");
  CorridorScenario sc;
  sc.horizon = require_number(doc, "T", "corridor scenario");
  sc.destination = require_point(doc, "destination", "corridor scenario");
  sc.tau = require_number(doc, "tau", "corridor scenario");
  if (!doc.contains("agents")) throw ModelError(Fault::MissingField, "missing \"agents\"");
  const json& arr = doc.at("agents");
  if (!arr.is_array()) throw ModelError(Fault::MalformedDocument, "\"agents\" must be an array");
  if (arr.size() != 2 && arr.size() != 3) {
    throw ModelError(Fault::BadAgentCount, "agent count must be 2 or 3");
  }
  std::vector<Vec2> starts;
  for (const json& a : arr) {
    if (!a.is_object()) throw ModelError(Fault::MalformedDocument, "agent must be an object");
    reject_unknown_keys(a, {"start", "radius"}, "agent");
    CorridorAgent agent;
    agent.start = require_point(a, "start", "agent");
    agent.radius = require_number(a, "radius", "agent");
    starts.push_back(agent.start);
    sc.agents.push_back(agent);
  }
  auto [axis, rho] = corridor_reduce(starts, sc.destination);
  sc.axis = axis;
  sc.rho0 = rho;
  // Normalize ordering: farthest agent first; all corridor formulas assume it.
  std::vector<std::size_t> order(sc.agents.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sc.rho0[a] > sc.rho0[b]; });
  CorridorScenario sorted = sc;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.agents[i] = sc.agents[order[i]];
    sorted.rho0[i] = sc.rho0[order[i]];
  }
  sorted.speeds.resize(sorted.agents.size());
  for (std::size_t i = 0; i < sorted.agents.size(); ++i) {
    sorted.speeds[i] = sorted.rho0[i] / sorted.horizon;
  }
  validate(sorted);
  return sorted;
}

Scenario parse_scenario(std::string_view text) {
  const json doc = parse_document(text);
  const std::string kind = require_kind(doc);
  if (kind == "single") return parse_single(text);
  if (kind == "corridor") return parse_corridor(text);
  throw ModelError(Fault::MalformedDocument, "unknown scenario kind \"" + kind + "\"");
}

std::string serialize(const SingleScenario& sc) {
  json doc;
  doc["kind"] = "single";
  doc["T"] = sc.horizon;
  doc["start"] = {sc.start.x, sc.start.y};
  doc["destination"] = {sc.destination.x, sc.destination.y};
  doc["obstacle"] = {{"center", {sc.obstacle_center.x, sc.obstacle_center.y}},
                     {"radius", sc.obstacle_radius}};
  doc["agent_radius"] = sc.agent_radius;
  doc["tau"] = sc.tau;
  return doc.dump(2);
}

std::string serialize(const CorridorScenario& sc) {
  json doc;
  doc["kind"] = "corridor";
  doc["T"] = sc.horizon;
  doc["destination"] = {sc.destination.x, sc.destination.y};
  doc["tau"] = sc.tau;
  doc["agents"] = json::array();
  for (const auto& a : sc.agents) {
    doc["agents"].push_back({{"start", {a.start.x, a.start.y}}, {"radius", a.radius}});
  }
  return doc.dump(2);
}

}  // namespace sweep
