#include "bellsq/martingale_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bellsq/errors.hpp"

namespace bellsq {

MartingaleTree::MartingaleTree(State3 root) { nodes_.push_back({root, {}}); }

MartingaleTree MartingaleTree::from_nodes(std::vector<TreeNode> nodes) {
  if (nodes.empty()) throw InvalidTreeError("tree has no nodes");
  std::vector<int> parents(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& e : nodes[i].children) {
      if (e.child <= i || e.child >= nodes.size()) throw InvalidTreeError("child index out of order");
      ++parents[e.child];
    }
  }
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (parents[i] != 1) throw InvalidTreeError("every non-root node needs exactly one parent");
  }
  MartingaleTree t;
  t.nodes_ = std::move(nodes);
  return t;
}

std::size_t MartingaleTree::add_child(std::size_t parent, double weight, const State3& state) {
  if (parent >= nodes_.size()) throw InvalidTreeError("add_child: unknown parent");
  const std::size_t idx = nodes_.size();
  nodes_.push_back({state, {}});
  nodes_[parent].children.push_back({weight, idx});
  return idx;
}

std::size_t MartingaleTree::add_symmetric_split(std::size_t parent) {
  if (parent >= nodes_.size()) throw InvalidTreeError("add_symmetric_split: unknown parent");
  const State3 s = nodes_[parent].state;
  const double gap = std::max(0.0, s.y - s.x * s.x);
  const double d = std::sqrt(gap);
  const double z = std::sqrt(s.z * s.z + gap);
  const double lo = s.x - d;
  const double hi = s.x + d;
  const std::size_t left = add_child(parent, 0.5, {lo, lo * lo, z});
  add_child(parent, 0.5, {hi, hi * hi, z});
  return left;
}

std::vector<double> MartingaleTree::masses() const {
  std::vector<double> m(nodes_.size(), 0.0);
  m[0] = 1.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto& e : nodes_[i].children) m[e.child] += m[i] * e.weight;
  }
  return m;
}

SplitEvent MartingaleTree::split_event(std::size_t i) const {
  const TreeNode& n = nodes_.at(i);
  SplitEvent e{n.state, {}};
  e.children.reserve(n.children.size());
  for (const auto& c : n.children) e.children.push_back({c.weight, nodes_[c.child].state});
  return e;
}

double expectation(const MartingaleTree& t, const std::function<double(double)>& g) {
  const auto m = t.masses();
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.node(i).is_leaf()) sum += m[i] * g(t.node(i).state.x);
  }
  return sum;
}

double square_function_sup(const MartingaleTree& t) {
  std::vector<double> s2(t.size(), 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const TreeNode& n = t.node(i);
    if (n.is_leaf()) best = std::max(best, s2[i]);
    for (const auto& e : n.children) {
      const double dx = t.node(e.child).state.x - n.state.x;
      s2[e.child] = s2[i] + dx * dx;
    }
  }
  return std::sqrt(best);
}

DistributionTable terminal_distribution(const MartingaleTree& t) {
  const auto m = t.masses();
  DistributionTable d;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.node(i).is_leaf() && m[i] > 0.0) d.atoms.push_back({t.node(i).state.x, m[i]});
  }
  return d;
}

double max_split_residual(const MartingaleTree& t) {
  double worst = 0.0;
  double leaf_mass = 0.0;
  const auto m = t.masses();
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const auto& e : t.node(i).children) {
      if (e.child <= i) return std::numeric_limits<double>::infinity();
    }
    const TreeNode& n = t.node(i);
    if (n.is_leaf()) {
      leaf_mass += m[i];
      worst = std::max(worst, std::abs(n.state.y - n.state.x * n.state.x));
    } else {
      worst = std::max(worst, split_residual(t.split_event(i)).max());
    }
  }
  return std::max(worst, std::abs(leaf_mass - 1.0));
}

void validate(const MartingaleTree& t, double tol) {
  const double r = max_split_residual(t);
  if (!(r <= tol)) {
    std::ostringstream msg;
    msg << "tree violates the splitting rules: residual " << r << " > " << tol;
    throw InvalidTreeError(msg.str());
  }
}

}  // namespace bellsq
