#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "contologic/rational.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// Node of a tree-presented topometric space. Each non-root node stands for
/// countably many copies below every point of its parent; copies of a child
/// are pairwise at distance scale(parent) and converge to the parent point.
struct TreeNode {
  Rational scale;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::size_t tree = 0;
  std::size_t depth = 0;
  std::string label;  // "t", "t.i", "t.i.j", ...
};

struct TreeSpec {
  Rational scale;
  std::vector<TreeSpec> children;
};

class TreeClusterSpace {
public:
  TreeClusterSpace() = default;
  /// D is indexed by tree; entries on the diagonal are ignored.
  TreeClusterSpace(const std::vector<TreeSpec>& trees, std::vector<std::vector<Rational>> D);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<std::size_t>& roots() const { return roots_; }
  std::size_t tree_count() const { return roots_.size(); }
  const Rational& tree_distance(std::size_t a, std::size_t b) const { return D_[a][b]; }
  const std::vector<std::vector<Rational>>& tree_distances() const { return D_; }

  /// Ancestor of node at the given depth (depth <= node depth).
  std::size_t ancestor(std::size_t node, std::size_t depth) const;
  std::size_t max_depth() const;
  /// Distinct node scales, ascending.
  std::vector<Rational> scales() const;
  std::vector<TreeSpec> specs() const;

  /// Sub-forest on an ancestor-closed node set. `map` receives the new
  /// index of each kept node.
  TreeClusterSpace restrict_to(const std::set<std::size_t>& keep,
                               std::vector<std::optional<std::size_t>>* map = nullptr) const;

  /// Disjoint union with every cross distance equal to `gap`.
  static TreeClusterSpace join(const TreeClusterSpace& a, const TreeClusterSpace& b, const Rational& gap);

private:
  void add(const TreeSpec& spec, std::optional<std::size_t> parent, std::size_t tree, std::size_t depth,
           const std::string& label);
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> roots_;
  std::vector<std::vector<Rational>> D_;
};

struct SpaceIssue {
  std::string kind;  // scale, range, symmetry, positivity, root-scale, triangle
  std::vector<std::string> witness;
  std::string detail;
};

struct SpaceReport {
  bool ok = true;
  std::vector<SpaceIssue> issues;
};

SpaceReport check_space(const TreeClusterSpace& t);

/// Size of the largest subset of `points` pairwise at distance > eps.
std::size_t eps_k_finite(const Table& d, const std::vector<std::size_t>& points, const Rational& eps);
std::size_t eps_k_finite(const Table& d, const Rational& eps);

struct RankReport {
  std::vector<unsigned> node_rank;
  std::optional<unsigned> rank;    // empty space: undefined
  std::optional<unsigned> degree;
  std::vector<std::size_t> top_roots;  // roots of maximal rank
};

/// rank(v) = 0 if v has no children or scale(v) <= eps, else 1 + max child
/// rank. Degree is the largest eps-separated set of maximal-rank points.
RankReport cb_rank_degree(const TreeClusterSpace& t, const Rational& eps);

struct RankGrid {
  Rational r_prime;
  Rational eps;
  std::vector<std::pair<Rational, std::optional<unsigned>>> trace;  // (r_n, RM_{r_n})
};

/// Scans r_n = r(1 - 2^-n-1) until RM_{r_n} = RM_{r_{n+1}}.
RankGrid rank_grid(const TreeClusterSpace& t, const Rational& r);

// ---------------------------------------------------------------------------
// Relations between two spaces

using NodeSet = std::set<std::size_t>;

/// Node pairs. An instance x of v and y of w are related when (v, w) is a
/// pair and the copy-index sequences of x and y are prefix-compatible.
struct NodeRelation {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

enum class ImageMode { ForAll, Exists, Fiber };

/// ForAll: {x : R_x in A}; Exists: {x : R_x meets A}; Fiber: R_x for the
/// single node in A (a set of left nodes).
NodeSet relation_image(const NodeRelation& R, std::size_t left_size, const NodeSet& A, ImageMode mode);

/// Largest descendant-closed subset.
NodeSet interior(const TreeClusterSpace& t, const NodeSet& A);
bool ancestor_closed(const TreeClusterSpace& t, const NodeSet& A);

struct TransferReport {
  bool closed = false;
  bool metric_hypothesis = false;
  bool containment = false;
  bool hypotheses_hold = false;
  std::optional<unsigned> rank_K;  // CB_eps of K in itself
  std::optional<unsigned> rank_F;  // CB_delta of F inside Y
  bool conclusion = false;         // meaningful only when hypotheses hold
  std::string failure;             // first failed hypothesis, with witness
};

TransferReport verify_transfer(const TreeClusterSpace& X, const TreeClusterSpace& Y, const NodeRelation& R,
                               const NodeSet& K, const NodeSet& F, const Rational& eps, const Rational& delta);

/// Distance between instances of nodes a and b whose copy sequences agree
/// on exactly the first `common` positions (`common` >= min depth means no
/// divergence).
Rational instance_distance(const TreeClusterSpace& t, std::size_t a, std::size_t b, std::size_t common);

}  // namespace contologic
