#pragma once

// Brute-force reference implementations used by the tests. None of these
// call into the library routines they are compared against.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "contologic/groups.hpp"
#include "contologic/structure.hpp"
#include "contologic/topometric.hpp"

namespace oracle {

using contologic::Element;
using contologic::Rational;
using contologic::Table;

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// random inputs

/// Symmetric table with values k/den, closed under shortest paths so the
/// triangle inequality holds; off-diagonal entries are positive.
inline Table random_metric(std::mt19937& rng, std::size_t n, long den = 8) {
  std::uniform_int_distribution<long> pick(1, den);
  Table d(n, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = q(pick(rng), den);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d(i, k) + d(k, j) < d(i, j)) d(i, j) = d(i, k) + d(k, j);
  return d;
}

inline contologic::FiniteStructure random_space(std::mt19937& rng, std::size_t n, long den = 8) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  return contologic::make_metric_space(names, random_metric(rng, n, den));
}

inline std::vector<std::vector<Element>> all_subsets(std::size_t n) {
  std::vector<std::vector<Element>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Element> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// metric facts

inline Rational dist_to(const Table& d, Element x, const std::vector<Element>& X) {
  Rational best = 2;
  for (Element y : X)
    if (d(x, y) < best) best = d(x, y);
  return best;
}

inline bool triangle(const Table& d) {
  const std::size_t n = d.universe;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (d(x, y) != d(y, x) || d(x, x) != 0) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (d(x, z) > d(x, y) + d(y, z)) return false;
    }
  return true;
}

/// Largest subset pairwise at distance > eps, by subset enumeration.
inline std::size_t separation(const Table& d, const std::vector<Element>& pts, const Rational& eps) {
  std::size_t best = 0;
  for (const auto& sub : all_subsets(pts.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < sub.size() && ok; ++i)
      for (std::size_t j = i + 1; j < sub.size() && ok; ++j) ok = d(pts[sub[i]], pts[sub[j]]) > eps;
    if (ok) best = std::max(best, sub.size());
  }
  return best;
}

// ---------------------------------------------------------------------------
// implication predicate, summed term by term

inline Rational chi_direct(const std::vector<Rational>& phi, const std::vector<Rational>& psi,
                           const std::vector<Element>& X, Element x, unsigned terms = 200) {
  Rational sum = 0;
  for (unsigned n = 0; n < terms; ++n) {
    Rational e = contologic::pow2_neg(n);
    Rational delta = 1;
    for (Element y : X)
      if (psi[y] > e && phi[y] < delta) delta = phi[y];
    Rational a = delta - phi[x];
    Rational b = psi[x] - e;
    Rational term = std::min(a > 0 ? a : Rational(0), b > 0 ? b : Rational(0));
    sum += contologic::pow2_neg(n + 1) * term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// groups

/// max over all (u, v) of d(u x v, u y v), written directly from the tables.
inline Table invariant_metric(const contologic::FiniteMetricGroup& g) {
  const std::size_t n = g.size();
  auto mul = [&](Element a, Element b) { return g.op[a * n + b]; };
  Table out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v) {
          const Rational& val = g.space.metric(mul(mul(u, x), v), mul(mul(u, y), v));
          if (val > out(x, y)) out(x, y) = val;
        }
  return out;
}

/// Z/a x Z/b with a random metric.
inline contologic::FiniteMetricGroup random_abelian_group(std::mt19937& rng, std::size_t a, std::size_t b) {
  const std::size_t n = a * b;
  contologic::FiniteMetricGroup g;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i / b) + "." + std::to_string(i % b));
  g.space = contologic::make_metric_space(names, random_metric(rng, n));
  for (Element x = 0; x < n; ++x) {
    g.members.push_back(x);
    g.inverse.push_back(((a - x / b) % a) * b + (b - x % b) % b);
    for (Element y = 0; y < n; ++y) g.op.push_back(((x / b + y / b) % a) * b + (x % b + y % b) % b);
  }
  return g;
}

/// Symmetric group S3 as permutations of {0,1,2}, with a random metric.
inline contologic::FiniteMetricGroup random_s3(std::mt19937& rng) {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& x) {
    return static_cast<Element>(std::find(perms.begin(), perms.end(), x) - perms.begin());
  };
  contologic::FiniteMetricGroup g;
  std::vector<std::string> names;
  for (const auto& x : perms) names.push_back(std::to_string(x[0]) + std::to_string(x[1]) + std::to_string(x[2]));
  g.space = contologic::make_metric_space(names, random_metric(rng, 6));
  for (Element x = 0; x < 6; ++x) {
    g.members.push_back(x);
    std::array<int, 3> inv{};
    for (int i = 0; i < 3; ++i) inv[perms[x][i]] = i;
    g.inverse.push_back(index(inv));
    for (Element y = 0; y < 6; ++y) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[x][perms[y][i]];
      g.op.push_back(index(c));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// ranks by iterated derivatives on node types

struct RankOracle {
  std::optional<unsigned> rank;
  std::optional<unsigned> degree;  // empty when a non-root survives at the top
  std::vector<unsigned> node_level;  // number of derivatives each node survives
};

/// Each derivative removes every node whose instances have an eps-finite
/// neighbourhood in what is left: a node survives iff its scale exceeds eps
/// and some child survived the previous step.
inline RankOracle rank_oracle(const contologic::TreeClusterSpace& t, const Rational& eps) {
  const auto& nodes = t.nodes();
  std::set<std::size_t> alive;
  for (std::size_t i = 0; i < nodes.size(); ++i) alive.insert(i);
  RankOracle out;
  out.node_level.assign(nodes.size(), 0);
  if (alive.empty()) return out;
  unsigned level = 0;
  std::set<std::size_t> last = alive;
  while (true) {
    std::set<std::size_t> next;
    for (std::size_t v : alive) {
      if (nodes[v].scale <= eps) continue;
      for (std::size_t c : nodes[v].children)
        if (alive.count(c)) {
          next.insert(v);
          break;
        }
    }
    if (next.empty()) break;
    for (std::size_t v : next) out.node_level[v] = level + 1;
    last = next;
    alive = next;
    ++level;
  }
  out.rank = level;
  // at level 0 every tree is within its root scale <= eps, or is a single point
  std::vector<std::size_t> trees;
  if (level == 0) {
    for (std::size_t i = 0; i < t.tree_count(); ++i) trees.push_back(i);
  } else {
    for (std::size_t v : last) {
      if (nodes[v].parent) return out;
      trees.push_back(nodes[v].tree);
    }
  }
  std::size_t best = 0;
  for (const auto& sub : all_subsets(trees.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < sub.size() && ok; ++i)
      for (std::size_t j = i + 1; j < sub.size() && ok; ++j)
        ok = t.tree_distance(trees[sub[i]], trees[sub[j]]) > eps;
    if (ok) best = std::max(best, sub.size());
  }
  out.degree = static_cast<unsigned>(best);
  return out;
}

/// Random tree with strictly decreasing scales k/16.
inline contologic::TreeSpec random_tree(std::mt19937& rng, long scale16, unsigned depth) {
  contologic::TreeSpec t;
  t.scale = q(scale16, 16);
  if (depth == 0 || scale16 <= 1) return t;
  std::uniform_int_distribution<int> kids(0, 2);
  int k = kids(rng);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<long> s(1, scale16 - 1);
    t.children.push_back(random_tree(rng, s(rng), depth - 1));
  }
  return t;
}

/// Forest of 1..max_trees random trees. Tree i gets a level a_i between its
/// root scale and 1 and D(i, j) = max(a_i, a_j), which satisfies every
/// space condition.
inline contologic::TreeClusterSpace random_forest(std::mt19937& rng, std::size_t max_trees, unsigned depth) {
  std::uniform_int_distribution<std::size_t> count(1, max_trees);
  std::uniform_int_distribution<long> root(2, 16);
  std::size_t k = count(rng);
  std::vector<contologic::TreeSpec> trees;
  std::vector<long> level;
  for (std::size_t i = 0; i < k; ++i) {
    long s = root(rng);
    trees.push_back(random_tree(rng, s, depth));
    level.push_back(std::uniform_int_distribution<long>(s, 16)(rng));
  }
  std::vector<std::vector<Rational>> D(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j) D[i][j] = q(std::max(level[i], level[j]), 16);
  return contologic::TreeClusterSpace(trees, D);
}

}  // namespace oracle
