#include "contologic/topometric.hpp"

#include <algorithm>
#include <functional>

namespace contologic {

TreeClusterSpace::TreeClusterSpace(const std::vector<TreeSpec>& trees, std::vector<std::vector<Rational>> D)
    : D_(std::move(D)) {
  if (D_.size() != trees.size()) throw Error("tree distance table must have one row per tree");
  for (const auto& row : D_)
    if (row.size() != trees.size()) throw Error("tree distance table must be square");
  for (std::size_t t = 0; t < trees.size(); ++t) add(trees[t], std::nullopt, t, 0, std::to_string(t));
}

void TreeClusterSpace::add(const TreeSpec& spec, std::optional<std::size_t> parent, std::size_t tree,
                           std::size_t depth, const std::string& label) {
  const std::size_t id = nodes_.size();
  nodes_.push_back({spec.scale, parent, {}, tree, depth, label});
  if (parent)
    nodes_[*parent].children.push_back(id);
  else
    roots_.push_back(id);
  for (std::size_t i = 0; i < spec.children.size(); ++i)
    add(spec.children[i], id, tree, depth + 1, label + "." + std::to_string(i));
}

std::size_t TreeClusterSpace::ancestor(std::size_t node, std::size_t depth) const {
  while (nodes_[node].depth > depth) node = *nodes_[node].parent;
  return node;
}

std::size_t TreeClusterSpace::max_depth() const {
  std::size_t out = 0;
  for (const auto& n : nodes_) out = std::max(out, n.depth);
  return out;
}

std::vector<Rational> TreeClusterSpace::scales() const {
  std::set<Rational> s;
  for (const auto& n : nodes_) s.insert(n.scale);
  return {s.begin(), s.end()};
}

std::vector<TreeSpec> TreeClusterSpace::specs() const {
  std::function<TreeSpec(std::size_t)> build = [&](std::size_t id) {
    TreeSpec s{nodes_[id].scale, {}};
    for (std::size_t c : nodes_[id].children) s.children.push_back(build(c));
    return s;
  };
  std::vector<TreeSpec> out;
  for (std::size_t r : roots_) out.push_back(build(r));
  return out;
}

TreeClusterSpace TreeClusterSpace::restrict_to(const std::set<std::size_t>& keep,
                                               std::vector<std::optional<std::size_t>>* map) const {
  for (std::size_t id : keep) {
    if (id >= nodes_.size()) throw Error("node index out of range");
    if (nodes_[id].parent && !keep.count(*nodes_[id].parent))
      throw Error("node set is not ancestor-closed at " + nodes_[id].label);
  }
  std::vector<std::size_t> kept_trees;
  for (std::size_t t = 0; t < roots_.size(); ++t)
    if (keep.count(roots_[t])) kept_trees.push_back(t);
  std::function<TreeSpec(std::size_t)> build = [&](std::size_t id) {
    TreeSpec s{nodes_[id].scale, {}};
    for (std::size_t c : nodes_[id].children)
      if (keep.count(c)) s.children.push_back(build(c));
    return s;
  };
  std::vector<TreeSpec> specs;
  std::vector<std::vector<Rational>> D(kept_trees.size(), std::vector<Rational>(kept_trees.size()));
  for (std::size_t i = 0; i < kept_trees.size(); ++i) {
    specs.push_back(build(roots_[kept_trees[i]]));
    for (std::size_t j = 0; j < kept_trees.size(); ++j) D[i][j] = D_[kept_trees[i]][kept_trees[j]];
  }
  TreeClusterSpace out(specs, std::move(D));
  if (map) {
    // Both forests are numbered in preorder, so kept nodes keep their order.
    map->assign(nodes_.size(), std::nullopt);
    std::size_t next = 0;
    for (std::size_t id = 0; id < nodes_.size(); ++id)
      if (keep.count(id)) (*map)[id] = next++;
  }
  return out;
}

TreeClusterSpace TreeClusterSpace::join(const TreeClusterSpace& a, const TreeClusterSpace& b,
                                        const Rational& gap) {
  std::vector<TreeSpec> specs = a.specs();
  for (auto& s : b.specs()) specs.push_back(std::move(s));
  const std::size_t na = a.tree_count(), n = specs.size();
  std::vector<std::vector<Rational>> D(n, std::vector<Rational>(n, gap));
  for (std::size_t i = 0; i < n; ++i) {
    D[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i < na && j < na) D[i][j] = a.tree_distance(i, j);
      if (i >= na && j >= na) D[i][j] = b.tree_distance(i - na, j - na);
    }
  }
  return TreeClusterSpace(specs, std::move(D));
}

SpaceReport check_space(const TreeClusterSpace& t) {
  SpaceReport r;
  auto issue = [&](SpaceIssue i) {
    r.ok = false;
    r.issues.push_back(std::move(i));
  };
  for (const auto& n : t.nodes()) {
    if (n.scale <= 0 || n.scale > 1) issue({"range", {n.label}, "scale " + to_string(n.scale) + " outside (0,1]"});
    if (n.parent) {
      const auto& p = t.node(*n.parent);
      if (n.scale >= p.scale)
        issue({"scale", {p.label, n.label}, to_string(n.scale) + " >= " + to_string(p.scale)});
    }
  }
  const std::size_t k = t.tree_count();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const Rational& d = t.tree_distance(i, j);
      std::vector<std::string> w{std::to_string(i), std::to_string(j)};
      if (d != t.tree_distance(j, i)) issue({"symmetry", w, to_string(d) + " != " + to_string(t.tree_distance(j, i))});
      if (d <= 0 || d > 1) issue({"positivity", w, "tree distance " + to_string(d) + " outside (0,1]"});
      Rational s = truth::max(t.node(t.roots()[i]).scale, t.node(t.roots()[j]).scale);
      if (d < s) issue({"root-scale", w, to_string(d) + " < root scale " + to_string(s)});
      for (std::size_t m = 0; m < k; ++m)
        if (m != i && m != j && d > t.tree_distance(i, m) + t.tree_distance(m, j))
          issue({"triangle", {std::to_string(i), std::to_string(m), std::to_string(j)},
                 to_string(d) + " > " + to_string(t.tree_distance(i, m)) + " + " + to_string(t.tree_distance(m, j))});
    }
  return r;
}

// ---------------------------------------------------------------------------
// eps-finiteness

namespace {

void grow_clique(const std::vector<std::vector<char>>& adj, std::vector<std::size_t>& candidates,
                 std::size_t size, std::size_t& best) {
  if (candidates.empty()) {
    best = std::max(best, size);
    return;
  }
  while (!candidates.empty()) {
    if (size + candidates.size() <= best) return;
    std::size_t v = candidates.back();
    candidates.pop_back();
    std::vector<std::size_t> next;
    for (std::size_t u : candidates)
      if (adj[v][u]) next.push_back(u);
    grow_clique(adj, next, size + 1, best);
  }
  best = std::max(best, size);
}

std::size_t max_clique(const std::vector<std::vector<char>>& adj) {
  std::vector<std::size_t> all(adj.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::size_t best = 0;
  grow_clique(adj, all, 0, best);
  return best;
}

}  // namespace

std::size_t eps_k_finite(const Table& d, const std::vector<std::size_t>& points, const Rational& eps) {
  std::vector<std::vector<char>> adj(points.size(), std::vector<char>(points.size(), 0));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j)
      adj[i][j] = i != j && d(points[i], points[j]) > eps;
  return max_clique(adj);
}

std::size_t eps_k_finite(const Table& d, const Rational& eps) {
  std::vector<std::size_t> all(d.universe);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return eps_k_finite(d, all, eps);
}

// ---------------------------------------------------------------------------
// ranks

RankReport cb_rank_degree(const TreeClusterSpace& t, const Rational& eps) {
  RankReport r;
  const auto& nodes = t.nodes();
  r.node_rank.assign(nodes.size(), 0);
  // preorder numbering: children come after their parent
  for (std::size_t id = nodes.size(); id-- > 0;) {
    const auto& n = nodes[id];
    if (n.children.empty() || n.scale <= eps) continue;
    unsigned best = 0;
    for (std::size_t c : n.children) best = std::max(best, r.node_rank[c]);
    r.node_rank[id] = best + 1;
  }
  if (t.roots().empty()) return r;
  unsigned top = 0;
  for (std::size_t root : t.roots()) top = std::max(top, r.node_rank[root]);
  r.rank = top;
  std::vector<std::size_t> trees;
  for (std::size_t i = 0; i < t.roots().size(); ++i)
    if (r.node_rank[t.roots()[i]] == top) {
      trees.push_back(i);
      r.top_roots.push_back(t.roots()[i]);
    }
  Table D(t.tree_count(), 2);
  for (std::size_t i = 0; i < t.tree_count(); ++i)
    for (std::size_t j = 0; j < t.tree_count(); ++j) D(i, j) = t.tree_distance(i, j);
  r.degree = static_cast<unsigned>(eps_k_finite(D, trees, eps));
  return r;
}

RankGrid rank_grid(const TreeClusterSpace& t, const Rational& r) {
  if (r <= 0) throw Error("rank_grid needs r > 0");
  RankGrid out;
  auto r_at = [&](unsigned n) -> Rational { return r * (1 - pow2_neg(n + 1)); };
  const std::size_t cap = t.scales().size() + 2;
  out.trace.emplace_back(r_at(0), cb_rank_degree(t, r_at(0)).rank);
  for (unsigned n = 0;; ++n) {
    Rational next = r_at(n + 1);
    out.trace.emplace_back(next, cb_rank_degree(t, next).rank);
    const auto& prev = out.trace[out.trace.size() - 2];
    if (prev.second == out.trace.back().second) {
      out.r_prime = next;
      out.eps = next - prev.first;
      return out;
    }
    if (n > cap) throw std::logic_error("rank grid failed to stabilise");
  }
}

// ---------------------------------------------------------------------------
// relations and transfer

NodeSet relation_image(const NodeRelation& R, std::size_t left_size, const NodeSet& A, ImageMode mode) {
  NodeSet out;
  if (mode == ImageMode::Fiber) {
    for (const auto& [x, y] : R.pairs)
      if (A.count(x)) out.insert(y);
    return out;
  }
  for (std::size_t x = 0; x < left_size; ++x) {
    bool all = true, any = false;
    for (const auto& [a, y] : R.pairs) {
      if (a != x) continue;
      if (A.count(y))
        any = true;
      else
        all = false;
    }
    if (mode == ImageMode::ForAll ? all : any) out.insert(x);
  }
  return out;
}

NodeSet interior(const TreeClusterSpace& t, const NodeSet& A) {
  NodeSet out;
  std::vector<char> inside(t.nodes().size(), 0);
  for (std::size_t id = t.nodes().size(); id-- > 0;) {
    if (!A.count(id)) continue;
    bool ok = true;
    for (std::size_t c : t.node(id).children) ok = ok && inside[c];
    inside[id] = ok;
    if (ok) out.insert(id);
  }
  return out;
}

bool ancestor_closed(const TreeClusterSpace& t, const NodeSet& A) {
  for (std::size_t id : A) {
    if (id >= t.nodes().size()) return false;
    const auto& p = t.node(id).parent;
    if (p && !A.count(*p)) return false;
  }
  return true;
}

Rational instance_distance(const TreeClusterSpace& t, std::size_t a, std::size_t b, std::size_t common) {
  const auto& na = t.node(a);
  const auto& nb = t.node(b);
  if (na.tree != nb.tree) return t.tree_distance(na.tree, nb.tree);
  std::size_t lca = std::min(na.depth, nb.depth);
  while (t.ancestor(a, lca) != t.ancestor(b, lca)) --lca;
  std::size_t j = std::min(lca, common);
  if (a == b && j == na.depth) return 0;
  return t.node(t.ancestor(a, j)).scale;
}

TransferReport verify_transfer(const TreeClusterSpace& X, const TreeClusterSpace& Y, const NodeRelation& R,
                               const NodeSet& K, const NodeSet& F, const Rational& eps, const Rational& delta) {
  const std::size_t nx = X.nodes().size(), ny = Y.nodes().size();
  for (const auto& [x, y] : R.pairs)
    if (x >= nx || y >= ny) throw Error("relation refers to a node outside the spaces");
  TransferReport rep;
  std::set<std::pair<std::size_t, std::size_t>> pairs(R.pairs.begin(), R.pairs.end());

  // (a) closedness: limits of related instances are truncations at a common depth
  rep.closed = ancestor_closed(X, K) && ancestor_closed(Y, F);
  if (!rep.closed) rep.failure = "K or F is not closed (not ancestor-closed)";
  for (const auto& [x, y] : pairs) {
    if (!rep.failure.empty()) break;
    const std::size_t dx = X.node(x).depth, dy = Y.node(y).depth;
    for (std::size_t j = 0; j < std::max(dx, dy); ++j) {
      auto lim = std::make_pair(X.ancestor(x, std::min(j, dx)), Y.ancestor(y, std::min(j, dy)));
      if (!pairs.count(lim)) {
        rep.closed = false;
        rep.failure = "relation not closed: (" + X.node(x).label + ", " + Y.node(y).label + ") needs (" +
                      X.node(lim.first).label + ", " + Y.node(lim.second).label + ")";
        break;
      }
    }
  }

  // (b) dY <= delta => dX <= eps over every realizable configuration
  rep.metric_hypothesis = true;
  for (const auto& [x, y] : pairs) {
    const std::size_t len = std::max(X.node(x).depth, Y.node(y).depth);
    for (const auto& [x2, y2] : pairs) {
      const std::size_t len2 = std::max(X.node(x2).depth, Y.node(y2).depth);
      for (std::size_t k = 0; k <= std::min(len, len2); ++k) {
        Rational dY = instance_distance(Y, y, y2, k);
        Rational dX = instance_distance(X, x, x2, k);
        if (dY <= delta && dX > eps) {
          rep.metric_hypothesis = false;
          if (rep.failure.empty())
            rep.failure = "metric hypothesis fails for (" + X.node(x).label + ", " + Y.node(y).label + "), (" +
                          X.node(x2).label + ", " + Y.node(y2).label + ") at common depth " + std::to_string(k) +
                          ": dY = " + to_string(dY) + ", dX = " + to_string(dX);
          break;
        }
      }
      if (!rep.metric_hypothesis) break;
    }
    if (!rep.metric_hypothesis) break;
  }

  // (c) K inside the interior of R^{exists Y} and inside R^{forall F}
  NodeSet everything;
  for (std::size_t i = 0; i < ny; ++i) everything.insert(i);
  NodeSet exists = interior(X, relation_image(R, nx, everything, ImageMode::Exists));
  NodeSet forall = relation_image(R, nx, F, ImageMode::ForAll);
  rep.containment = true;
  for (std::size_t k : K) {
    if (!exists.count(k) || !forall.count(k)) {
      rep.containment = false;
      if (rep.failure.empty())
        rep.failure = "K not inside interior(R^exists Y) and R^forall F at " + X.node(k).label;
      break;
    }
  }

  rep.hypotheses_hold = rep.closed && rep.metric_hypothesis && rep.containment;
  if (ancestor_closed(X, K)) rep.rank_K = cb_rank_degree(X.restrict_to(K), eps).rank;
  RankReport ry = cb_rank_degree(Y, delta);
  for (std::size_t f : F) rep.rank_F = std::max(rep.rank_F.value_or(0), ry.node_rank[f]);
  rep.conclusion = !rep.rank_K || (rep.rank_F && *rep.rank_K <= *rep.rank_F);
  return rep;
}

}  // namespace contologic
