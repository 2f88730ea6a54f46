#include "bellsq/serialization.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "bellsq/errors.hpp"

namespace bellsq {

namespace {

nlohmann::json state_json(const State3& s) { return {{"x", s.x}, {"y", s.y}, {"z", s.z}}; }

State3 state_from(const nlohmann::json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>()};
}

}  // namespace

nlohmann::json tree_to_json(const MartingaleTree& t) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : t.nodes()) {
    nlohmann::json kids = nlohmann::json::array();
    for (const auto& e : n.children) kids.push_back({{"w", e.weight}, {"ref", e.child}});
    nodes.push_back({{"state", state_json(n.state)}, {"children", kids}});
  }
  nlohmann::json leaves = nlohmann::json::array();
  for (const auto& a : terminal_distribution(t).atoms) leaves.push_back({{"value", a.value}, {"mass", a.mass}});
  return {{"version", kTreeSchemaVersion}, {"root", state_json(t.root())}, {"nodes", nodes}, {"leaves", leaves}};
}

MartingaleTree tree_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kTreeSchemaVersion) throw InvalidTreeError("unsupported tree version");
    const auto& nodes = j.at("nodes");
    if (!nodes.is_array() || nodes.empty()) throw InvalidTreeError("tree has no nodes");
    std::vector<TreeNode> flat(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      flat[i].state = state_from(nodes[i].at("state"));
      for (const auto& c : nodes[i].at("children")) {
        flat[i].children.push_back({c.at("w").get<double>(), c.at("ref").get<std::size_t>()});
      }
    }
    MartingaleTree t = MartingaleTree::from_nodes(std::move(flat));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidTreeError(std::string("malformed tree json: ") + e.what());
  }
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["samples"] = r.samples;
  j["worst_violation"] = std::isfinite(r.worst_violation) ? nlohmann::json(r.worst_violation) : nlohmann::json();
  j["worst_location"] = r.worst_location;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  j["seed"] = r.seed;
  return j;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv_xyz(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& ys,
                   const std::vector<double>& values) {
  out << "x,y,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_double(xs[i]) << ',' << format_double(ys[i]) << ',' << format_double(values[i]) << '\n';
  }
}

}  // namespace bellsq
