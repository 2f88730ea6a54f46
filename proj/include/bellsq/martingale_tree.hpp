#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bellsq/geometry.hpp"

namespace bellsq {

struct TreeEdge {
  double weight = 0.0;
  std::size_t child = 0;
};

struct TreeNode {
  State3 state;
  std::vector<TreeEdge> children;

  bool is_leaf() const { return children.empty(); }
};

struct Atom {
  double value = 0.0;
  double mass = 0.0;
};

// Terminal distribution of a martingale.
struct DistributionTable {
  std::vector<Atom> atoms;
};

// Finite martingale as a flat node array. Node 0 is the root and every child
// index is larger than its parent's, so one forward pass propagates masses.
// Leaves sit on the lower boundary y = x^2; the terminal value is x.
class MartingaleTree {
 public:
  explicit MartingaleTree(State3 root);
  // Adopts a node array; throws InvalidTreeError unless every node but the
  // root has exactly one parent with a smaller index.
  static MartingaleTree from_nodes(std::vector<TreeNode> nodes);

  // Appends a child of `parent` and returns its index.
  std::size_t add_child(std::size_t parent, double weight, const State3& state);
  // Appends the two-point split parent -> x -+ sqrt(y - x^2) with weight 1/2
  // each and returns the index of the left child.
  std::size_t add_symmetric_split(std::size_t parent);

  const State3& root() const { return nodes_.front().state; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }

  // Probability of reaching each node.
  std::vector<double> masses() const;
  SplitEvent split_event(std::size_t i) const;

 private:
  MartingaleTree() = default;
  std::vector<TreeNode> nodes_;
};

// Sum over leaves of mass * g(value).
double expectation(const MartingaleTree& t, const std::function<double(double)>& g);

// Largest sqrt of the summed squared increments along a root-to-leaf path.
double square_function_sup(const MartingaleTree& t);

DistributionTable terminal_distribution(const MartingaleTree& t);

// Largest splitting-rule residual over internal nodes; also covers leaves off
// the lower boundary and the total leaf mass.
double max_split_residual(const MartingaleTree& t);

// Throws InvalidTreeError when max_split_residual exceeds tol.
void validate(const MartingaleTree& t, double tol = kDomainTol);

}  // namespace bellsq
