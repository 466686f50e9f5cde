#include <functional>
#include <random>

#include "acceptance.hpp"
#include "contologic/groups.hpp"
#include "contologic/model_io.hpp"
#include "contologic/topometric.hpp"
#include "oracles.hpp"

using namespace contologic;
using oracle::q;

namespace acc {

namespace {

bool bi_invariant(const FiniteMetricGroup& g, const Table& d) {
  const std::size_t n = g.size();
  auto mul = [&](Element a, Element b) { return g.op[a * n + b]; };
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (d(g.inverse[x], g.inverse[y]) != d(x, y)) return false;
      for (Element z = 0; z < n; ++z)
        if (d(mul(z, x), mul(z, y)) != d(x, y) || d(mul(x, z), mul(y, z)) != d(x, y)) return false;
    }
  return true;
}

FiniteMetricGroup random_group(std::mt19937& rng, int i) {
  switch (i % 6) {
    case 0: return oracle::random_abelian_group(rng, 1 + rng() % 8, 1);
    case 1: return oracle::random_abelian_group(rng, 2, 2);
    case 2: return oracle::random_abelian_group(rng, 2, 4);
    case 3: return oracle::random_abelian_group(rng, 2, 3);
    case 4: return oracle::random_s3(rng);
    default: return oracle::random_abelian_group(rng, 4 + rng() % 5, 1);
  }
}

}  // namespace

Outcome criterion_invariant_metric() {
  auto skew = load_group(fixture("c4skew.json"));
  Table d1 = invariant_metric(skew);
  bool uniform = d1 == oracle::invariant_metric(skew);
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) uniform = uniform && d1(x, y) == (x == y ? Rational(0) : q(1, 2));
  std::string fail = uniform ? "" : "C4SKEW output is not the uniform 1/2 metric";
  std::mt19937 rng(606);
  for (int i = 0; i < 50 && fail.empty(); ++i) {
    auto g = random_group(rng, i);
    Table out = invariant_metric(g);
    bool dominates = true;
    for (std::size_t k = 0; k < out.size(); ++k) dominates = dominates && out[k] >= g.space.metric[k];
    if (out != oracle::invariant_metric(g)) fail = "group " + std::to_string(i) + " differs from the (u,v) oracle";
    else if (!bi_invariant(g, out)) fail = "group " + std::to_string(i) + " output not invariant";
    else if (!dominates) fail = "group " + std::to_string(i) + " output below the input";
    else if (!oracle::triangle(out)) fail = "group " + std::to_string(i) + " output not a metric";
  }
  return {fail.empty(), fail.empty() ? "C4SKEW gives 1/2 off the diagonal; 50 random groups (|G| <= 8) invariant and dominating"
                                     : fail};
}

namespace {

const std::vector<Rational>& rank_grid_eps() {
  static const std::vector<Rational> g{q(1, 8), q(1, 4), q(3, 10), q(1, 2)};
  return g;
}

bool matches_oracle(const TreeClusterSpace& t, const Rational& eps, std::string& why) {
  auto r = cb_rank_degree(t, eps);
  auto o = oracle::rank_oracle(t, eps);
  if (r.rank != o.rank) {
    why = "rank differs at eps " + to_string(eps);
    return false;
  }
  if (!o.degree || r.degree != o.degree) {
    why = "degree differs at eps " + to_string(eps);
    return false;
  }
  return true;
}

}  // namespace

Outcome criterion_rank_engine() {
  std::string fail;
  std::size_t checks = 0;
  for (const char* f : {"tree_a.json", "tree_a_pair.json"}) {
    auto t = load_space(fixture(f));
    for (const auto& e : rank_grid_eps()) {
      ++checks;
      std::string why;
      if (!matches_oracle(t, e, why) && fail.empty()) fail = std::string(f) + ": " + why;
    }
  }
  std::mt19937 rng(707);
  for (int i = 0; i < 500; ++i) {
    auto t = oracle::random_forest(rng, 3, 3);
    for (const auto& e : rank_grid_eps()) {
      ++checks;
      std::string why;
      if (!matches_oracle(t, e, why) && fail.empty()) fail = "random space " + std::to_string(i) + ": " + why;
    }
  }
  auto a = load_space(fixture("tree_a.json"));
  auto r18 = cb_rank_degree(a, q(1, 8)).rank, r310 = cb_rank_degree(a, q(3, 10)).rank;
  if ((r18 != 2u || r310 != 1u) && fail.empty()) fail = "TREE_A ranks differ from 2 and 1";
  const std::vector<Rational> fine{q(1, 16), q(1, 8), q(3, 16), q(1, 4), q(3, 10), q(3, 8), q(1, 2), q(3, 4), q(1)};
  std::mt19937 rng2(708);
  std::size_t mono = 0;
  for (int i = 0; i < 500; ++i) {
    auto t = oracle::random_forest(rng2, 3, 3);
    std::optional<unsigned> prev;
    for (const auto& e : fine) {
      auto r = cb_rank_degree(t, e).rank;
      if (prev && *r > *prev && fail.empty()) fail = "rank increases with eps on random space " + std::to_string(i);
      prev = r;
      ++mono;
    }
  }
  return {fail.empty(), fail.empty() ? std::to_string(checks) + " rank/degree checks agree with the derivative oracle; TREE_A rank 2 at 1/8, 1 at 3/10; " +
                                           std::to_string(mono) + " monotonicity checks"
                                     : fail};
}

Outcome criterion_degree_additivity() {
  std::mt19937 rng(808);
  std::size_t pairs = 0, tries = 0;
  std::string fail;
  while (pairs < 100 && tries < 100000) {
    ++tries;
    const Rational& eps = rank_grid_eps()[rng() % rank_grid_eps().size()];
    auto a = oracle::random_forest(rng, 3, 3);
    auto b = oracle::random_forest(rng, 3, 3);
    auto ra = cb_rank_degree(a, eps), rb = cb_rank_degree(b, eps);
    if (ra.rank != rb.rank) continue;
    ++pairs;
    auto j = TreeClusterSpace::join(a, b, q(1));
    if (!check_space(j).ok) {
      fail = "join is not a valid space";
      break;
    }
    auto rj = cb_rank_degree(j, eps);
    auto oj = oracle::rank_oracle(j, eps);
    if (rj.rank != ra.rank || rj.degree != oj.degree || *rj.degree < *ra.degree + *rb.degree) {
      fail = "pair " + std::to_string(pairs) + " violates degree additivity";
      break;
    }
  }
  if (pairs < 100 && fail.empty()) fail = "only " + std::to_string(pairs) + " equal-rank pairs generated";
  return {fail.empty(), fail.empty() ? "100 equal-rank pairs joined at distance 1: degree(join) >= sum, zero violations" : fail};
}

namespace {

TreeSpec scale_spec(const TreeSpec& s, const Rational& c) {
  TreeSpec out{s.scale * c, {}};
  for (const auto& ch : s.children) out.children.push_back(scale_spec(ch, c));
  return out;
}

TreeClusterSpace scaled(const TreeClusterSpace& t, const Rational& c) {
  std::vector<TreeSpec> specs;
  for (const auto& s : t.specs()) specs.push_back(scale_spec(s, c));
  auto D = t.tree_distances();
  for (auto& row : D)
    for (auto& v : row) v *= c;
  return TreeClusterSpace(specs, D);
}

NodeSet random_closed(std::mt19937& rng, const TreeClusterSpace& t, bool force_root) {
  NodeSet out;
  for (std::size_t id = 0; id < t.nodes().size(); ++id) {
    const auto& p = t.node(id).parent;
    if (p && !out.count(*p)) continue;
    if (rng() % 2 || (force_root && !p && out.empty())) out.insert(id);
  }
  return out;
}

NodeSet close_up(const TreeClusterSpace& t, NodeSet s) {
  NodeSet out;
  for (std::size_t id : s)
    for (std::optional<std::size_t> v = id; v; v = t.node(*v).parent) out.insert(*v);
  return out;
}

}  // namespace

Outcome criterion_transfer() {
  std::mt19937 rng(909);
  const std::vector<Rational> grid{q(1, 16), q(1, 8), q(3, 16), q(1, 4), q(3, 8), q(1, 2), q(3, 4)};
  std::size_t passing = 0, strict = 0, attempts = 0;
  std::size_t by_mode[3] = {0, 0, 0};
  std::string fail;
  while (passing < 1000 && attempts < 200000 && fail.empty()) {
    ++attempts;
    const int mode = static_cast<int>(rng() % 3);
    TreeClusterSpace X, Y;
    NodeRelation R;
    auto base = oracle::random_forest(rng, 3, 3);
    if (mode == 1) {
      Y = base;
      NodeSet S = random_closed(rng, Y, true);
      std::vector<std::optional<std::size_t>> map;
      X = Y.restrict_to(S, &map);
      for (std::size_t v : S) R.pairs.push_back({*map[v], v});
    } else {
      X = base;
      Y = mode == 0 ? base : scaled(base, rng() % 2 ? q(1, 2) : q(3, 4));
      for (std::size_t v = 0; v < X.nodes().size(); ++v) R.pairs.push_back({v, v});
    }
    NodeSet K = random_closed(rng, X, true);
    NodeSet image;
    for (const auto& [x, y] : R.pairs)
      if (K.count(x)) image.insert(y);
    NodeSet F = close_up(Y, image);
    for (std::size_t v : random_closed(rng, Y, false)) F.insert(v);
    const Rational& eps = grid[rng() % grid.size()];
    const Rational& delta = grid[rng() % grid.size()];
    auto rep = verify_transfer(X, Y, R, K, F, eps, delta);
    if (!rep.hypotheses_hold) continue;
    ++passing;
    ++by_mode[mode];
    auto oK = oracle::rank_oracle(X.restrict_to(K), eps).rank;
    auto levels = oracle::rank_oracle(Y, delta).node_level;
    unsigned oF = 0;
    for (std::size_t f : F) oF = std::max(oF, levels[f]);
    if (rep.rank_K != oK || rep.rank_F != oF) fail = "instance " + std::to_string(passing) + ": ranks differ from the oracle";
    else if (!oK || *oK > oF) fail = "instance " + std::to_string(passing) + ": CB(K) > CB(F)";
    else if (!rep.conclusion) fail = "instance " + std::to_string(passing) + ": conclusion flag unset";
    else if (*oK < oF) ++strict;
  }
  if (fail.empty() && passing < 1000) fail = "only " + std::to_string(passing) + " instances passed the hypotheses";
  if (fail.empty() && strict < 50) fail = "only " + std::to_string(strict) + " strict instances";
  return {fail.empty(), fail.empty() ? "1000 instances (" + std::to_string(by_mode[0]) + " identity, " + std::to_string(by_mode[1]) +
                                           " sub-forest, " + std::to_string(by_mode[2]) + " rescaled; " +
                                           std::to_string(attempts) + " generated) satisfy CB_eps(K) <= CB_delta(F); " +
                                           std::to_string(strict) + " strict"
                                     : fail};
}

Outcome criterion_rank_grid() {
  std::mt19937 rng(1010);
  std::vector<TreeClusterSpace> spaces{load_space(fixture("tree_a.json")), load_space(fixture("tree_a_pair.json"))};
  for (int i = 0; i < 500; ++i) spaces.push_back(oracle::random_forest(rng, 3, 3));
  const std::vector<Rational> rs{q(1, 4), q(1, 2), q(3, 4), q(1)};
  std::string fail;
  std::size_t runs = 0, longest = 0;
  for (std::size_t i = 0; i < spaces.size() && fail.empty(); ++i)
    for (const auto& r : rs) {
      ++runs;
      auto g = rank_grid(spaces[i], r);
      std::size_t steps = g.trace.size() - 1;
      longest = std::max(longest, steps);
      if (steps > spaces[i].scales().size() + 1) fail = "space " + std::to_string(i) + " needed " + std::to_string(steps) + " steps";
      else if (!(0 < g.eps && g.eps < g.r_prime && g.r_prime < r)) fail = "space " + std::to_string(i) + ": bad (r', eps)";
      else if (oracle::rank_oracle(spaces[i], g.r_prime).rank != oracle::rank_oracle(spaces[i], g.r_prime - g.eps).rank)
        fail = "space " + std::to_string(i) + ": RM(r') != RM(r' - eps)";
      if (!fail.empty()) break;
    }
  return {fail.empty(), fail.empty() ? std::to_string(runs) + " grids stop within #scales+1 steps (longest " +
                                           std::to_string(longest) + ") with RM(r') = RM(r'-eps)"
                                     : fail};
}

namespace {

struct CopyCheck {
  bool ok;
  std::string why;
};

CopyCheck check_copy(const ApproxProduct& ap, Element y0, const Rational& r, const Rational& eps) {
  auto t = translate_copy(ap, y0, r, eps);
  const Table& d = ap.group.metric();
  // Z recomputed from phi directly
  std::vector<Element> Z;
  const std::size_t n = ap.group.size();
  for (Element z = 0; z < n; ++z)
    for (Element h : ap.group.members)
      if (ap.phi[(y0 * n + h) * n + z] == 0) {
        Z.push_back(z);
        break;
      }
  if (Z != t.Z) return {false, "Z differs from the zero-set union"};
  Rational dGZ = 1;
  for (Element g : ap.group.members)
    for (Element z : Z) dGZ = std::min(dGZ, d(g, z));
  if (!(dGZ > r - eps)) return {false, "d(G,Z) <= r - eps"};
  if (oracle::separation(d, Z, r - eps) < oracle::separation(d, ap.group.members, r))
    return {false, "separation transfer fails"};
  if (!t.separated || !t.sep_transfer) return {false, "library flags disagree"};
  return {true, ""};
}

}  // namespace

Outcome criterion_translate_copy() {
  ApproxProduct fixed;
  fixed.group = load_group(fixture("z4sub.json"));
  fixed.phi = exact_product_table(fixed.group);
  for (Element e = 0; e < 4; ++e) fixed.X.members.push_back(e);
  fixed.Y = fixed.X;
  fixed.eps = 0;
  auto c = check_copy(fixed, 1, q(1, 4), 0);
  auto t = translate_copy(fixed, 1, q(1, 4), 0);
  std::string fail;
  if (!c.ok) fail = "Z/4 fixture: " + c.why;
  else if (t.Z != std::vector<Element>{1, 3} || t.distance_G_Z != q(1, 2) || t.sep_G != 2 || t.sep_Z != 2)
    fail = "Z/4 fixture values differ";

  std::mt19937 rng(1111);
  std::size_t done = 0, attempts = 0, inexact = 0;
  while (done < 50 && attempts < 5000 && fail.empty()) {
    ++attempts;
    FiniteMetricGroup A = attempts % 3 == 0 ? oracle::random_s3(rng)
                                            : oracle::random_abelian_group(rng, 2 + rng() % 3, 1 + rng() % 2);
    if (rng() % 2) A.space.metric = invariant_metric(A);
    const std::size_t n = A.size();
    // G: cyclic subgroup of a random element
    Element gen = rng() % n;
    std::vector<Element> G{A.identity};
    for (Element x = A.mul(gen, A.identity); x != A.identity; x = A.mul(gen, x)) G.push_back(x);
    std::sort(G.begin(), G.end());
    if (G.size() == n) continue;
    ApproxProduct ap;
    ap.group = A;
    ap.group.ambient_op = A.op;
    ap.group.members = G;
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        if (!std::binary_search(G.begin(), G.end(), a) || !std::binary_search(G.begin(), G.end(), b))
          ap.group.op[a * n + b] = FiniteMetricGroup::none;
    for (Element a = 0; a < n; ++a)
      if (!std::binary_search(G.begin(), G.end(), a)) ap.group.inverse[a] = FiniteMetricGroup::none;
    ap.phi = exact_product_table(ap.group);
    Element y0 = 0;
    Rational far = 0;
    for (Element y = 0; y < n; ++y) {
      Rational dy = oracle::dist_to(A.space.metric, y, G);
      if (dy > far) {
        far = dy;
        y0 = y;
      }
    }
    for (Element a = 0; a < n; ++a) ap.X.members.push_back(a);
    std::vector<Element> Y = G;
    Y.push_back(y0);
    ap.Y = PointSet::of(Y);
    ap.eps = 1;
    Rational eps = audit_approx_product(ap).max_defect;
    if (!(eps < far)) continue;
    ap.eps = eps;
    Rational r = (eps + far) / 2;
    if (eps > 0) ++inexact;
    auto cc = check_copy(ap, y0, r, eps);
    if (!cc.ok) fail = "instance " + std::to_string(done) + ": " + cc.why;
    ++done;
  }
  if (fail.empty() && done < 50) fail = "only " + std::to_string(done) + " certified instances generated";
  return {fail.empty(), fail.empty() ? "Z/4 fixture: Z={1,3}, d(G,Z)=1/2, sep 2 >= 2; 50 random instances (" +
                                           std::to_string(inexact) + " with eps > 0) pass, zero violations"
                                     : fail};
}

}  // namespace acc
