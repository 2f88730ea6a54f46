#include "bellsq/serialization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "bellsq/errors.hpp"
#include "bellsq/extremizers.hpp"
#include "bellsq/sampling.hpp"

namespace bellsq {
namespace {

void expect_same_tree(const MartingaleTree& a, const MartingaleTree& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const TreeNode& x = a.node(i);
    const TreeNode& y = b.node(i);
    EXPECT_EQ(x.state.x, y.state.x);
    EXPECT_EQ(x.state.y, y.state.y);
    EXPECT_EQ(x.state.z, y.state.z);
    ASSERT_EQ(x.children.size(), y.children.size());
    for (std::size_t k = 0; k < x.children.size(); ++k) {
      EXPECT_EQ(x.children[k].weight, y.children[k].weight);
      EXPECT_EQ(x.children[k].child, y.children[k].child);
    }
  }
}

TEST(TreeJson, RoundTripIsExact) {
  const MartingaleTree chain = extremize_roof_indicator(0.2, 0.9, 150);
  expect_same_tree(chain, tree_from_json(tree_to_json(chain)));
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const MartingaleTree t = random_tree(rng);
    const nlohmann::json j = nlohmann::json::parse(tree_to_json(t).dump());
    expect_same_tree(t, tree_from_json(j));
  }
}

TEST(TreeJson, Schema) {
  const MartingaleTree t = extremize_two_point({0.0, 1.0, 0.0});
  const nlohmann::json j = tree_to_json(t);
  EXPECT_EQ(j.at("version"), kTreeSchemaVersion);
  EXPECT_EQ(j.at("root").at("y"), 1.0);
  EXPECT_EQ(j.at("nodes").size(), 3u);
  EXPECT_EQ(j.at("nodes")[0].at("children")[1].at("ref"), 2);
  EXPECT_EQ(j.at("nodes")[0].at("children")[1].at("w"), 0.5);
  ASSERT_EQ(j.at("leaves").size(), 2u);
  EXPECT_EQ(j.at("leaves")[0].at("value"), -1.0);
  EXPECT_EQ(j.at("leaves")[0].at("mass"), 0.5);
}

TEST(TreeJson, RejectsMalformedDocuments) {
  EXPECT_THROW(tree_from_json(nlohmann::json::object()), InvalidTreeError);
  nlohmann::json j = tree_to_json(extremize_two_point({0.0, 1.0, 0.0}));
  j["nodes"][0]["children"][1]["ref"] = 1;
  EXPECT_THROW(tree_from_json(j), InvalidTreeError);
  j = tree_to_json(extremize_two_point({0.0, 1.0, 0.0}));
  j["version"] = kTreeSchemaVersion + 1;
  EXPECT_THROW(tree_from_json(j), InvalidTreeError);
  j = tree_to_json(extremize_two_point({0.0, 1.0, 0.0}));
  j["nodes"][1]["state"]["x"] = "left";
  EXPECT_THROW(tree_from_json(j), InvalidTreeError);
}

TEST(ReportJson, Fields) {
  VerificationReport r;
  r.suite = "demo";
  r.tolerance = 1e-9;
  r.seed = 42;
  r.record(-0.25, {1.0, 2.0});
  r.finalize();
  const nlohmann::json j = report_to_json(r);
  EXPECT_EQ(j.at("suite"), "demo");
  EXPECT_EQ(j.at("samples"), 1);
  EXPECT_EQ(j.at("worst_violation"), -0.25);
  EXPECT_EQ(j.at("worst_location"), nlohmann::json::array({1.0, 2.0}));
  EXPECT_EQ(j.at("tolerance"), 1e-9);
  EXPECT_EQ(j.at("passed"), true);
  EXPECT_EQ(j.at("seed"), 42);

  VerificationReport empty;
  EXPECT_TRUE(report_to_json(empty).at("worst_violation").is_null());
}

TEST(Csv, FormatAndPrecision) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(std::exp(1.0))), std::exp(1.0));
  std::ostringstream out;
  write_csv_xyz(out, {0.0, -1.0}, {1.0, 2.0}, {7.0 / 8.0, 0.5});
  EXPECT_EQ(out.str(), "x,y,value\n0,1,0.875\n-1,2,0.5\n");
}

}  // namespace
}  // namespace bellsq
