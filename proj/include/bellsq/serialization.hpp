#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellsq/martingale_tree.hpp"
#include "bellsq/report.hpp"

namespace bellsq {

inline constexpr int kTreeSchemaVersion = 1;

// {"version", "root": {x, y, z}, "nodes": [{"state": {x, y, z},
//  "children": [{"w", "ref"}]}], "leaves": [{"value", "mass"}]}
nlohmann::json tree_to_json(const MartingaleTree& t);
// Rebuilds the tree from "nodes"; throws InvalidTreeError on schema errors.
MartingaleTree tree_from_json(const nlohmann::json& j);

// {"suite", "samples", "worst_violation", "worst_location", "tolerance",
//  "passed", "seed"}; a worst violation of -inf (no samples) is null.
nlohmann::json report_to_json(const VerificationReport& r);

// 17 significant digits, '.' separator, independent of the locale.
std::string format_double(double v);

// CSV with header "x,y,value".
void write_csv_xyz(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& ys,
                   const std::vector<double>& values);

}  // namespace bellsq
