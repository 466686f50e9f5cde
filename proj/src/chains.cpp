#include "contologic/chains.hpp"

#include <algorithm>
#include <set>

namespace contologic {

namespace {

// First x in A with d(x, B) >= eps, if any.
std::optional<BallFailure> ball_failure(const FiniteStructure& m, const PointSet& A, const PointSet& B,
                                        const Rational& eps) {
  for (std::size_t x : A.members) {
    Rational dist = distance_to_set(m, x, B);
    if (dist >= eps) return BallFailure{0, 0, x, dist};
  }
  return std::nullopt;
}

void check_member(const FiniteStructure& m, const PointSet& s, std::size_t i) {
  if (s.arity != 1) throw Error("chain member " + std::to_string(i) + " is not a unary set");
  if (s.empty()) throw Error("chain member " + std::to_string(i) + " is empty");
  if (s.members.back() >= m.size()) throw Error("chain member " + std::to_string(i) + " leaves the universe");
}

Stabilization scan(const FiniteStructure& m, const std::function<const PointSet&(std::size_t)>& member,
                   std::size_t alphas, std::size_t betas, const Rational& eps) {
  Stabilization s;
  for (std::size_t a = 0; a < alphas; ++a) {
    std::optional<BallFailure> fail;
    for (std::size_t b = 0; b < betas && !fail; ++b) {
      fail = ball_failure(m, member(a), member(b), eps);
      if (fail) {
        fail->alpha = a;
        fail->beta = b;
      }
    }
    if (!fail) {
      s.alpha = a;
      return s;
    }
    s.below = fail;
  }
  return s;
}

}  // namespace

void validate_chain(const DescendingChain& c) {
  if (c.sets.empty()) throw Error("chain has no members");
  for (std::size_t i = 0; i < c.sets.size(); ++i) {
    check_member(c.space, c.sets[i], i);
    if (i == 0) continue;
    for (std::size_t x : c.sets[i].members)
      if (!c.sets[i - 1].contains(x))
        throw Error("chain not descending: " + c.space.name(x) + " in member " + std::to_string(i) +
                    " but not in member " + std::to_string(i - 1));
  }
}

PointSet chain_limit(const DescendingChain& c) {
  validate_chain(c);
  PointSet out = c.sets.front();
  for (const auto& s : c.sets) {
    std::vector<std::size_t> keep;
    std::set_intersection(out.members.begin(), out.members.end(), s.members.begin(), s.members.end(),
                          std::back_inserter(keep));
    out.members = std::move(keep);
  }
  return out;
}

Stabilization approx_stabilizes(const DescendingChain& c, const Rational& eps) {
  validate_chain(c);
  if (eps <= 0) throw Error("eps must be positive");
  auto member = [&](std::size_t i) -> const PointSet& { return c.sets[i]; };
  Stabilization s = scan(c.space, member, c.sets.size(), c.sets.size(), eps);
  if (!s.alpha) throw std::logic_error("finite chain failed to stabilize");
  // keep only the witness against alpha - 1
  if (*s.alpha == 0) s.below.reset();
  return s;
}

Stabilization approx_stabilizes(const LazyChain& c, const Rational& eps) {
  if (eps <= 0) throw Error("eps must be positive");
  if (c.horizon == 0) throw Error("lazy chain horizon must be positive");
  std::vector<PointSet> cache;
  for (std::size_t i = 0; i <= c.horizon; ++i) {
    cache.push_back(c.member(i));
    check_member(c.space, cache.back(), i);
  }
  auto member = [&](std::size_t i) -> const PointSet& { return cache[i]; };
  Stabilization s = scan(c.space, member, c.horizon, c.horizon + 1, eps);
  if (s.alpha && *s.alpha == 0) s.below.reset();
  return s;
}

LimitEquivalence limit_equivalence(const DescendingChain& c, const Rational& eps) {
  validate_chain(c);
  if (eps <= 0) throw Error("eps must be positive");
  PointSet X = chain_limit(c);
  if (X.empty()) throw Error("chain intersection is empty");
  LimitEquivalence r;
  // left side: against every member
  for (std::size_t a = 0; a < c.sets.size() && !r.alpha_all; ++a) {
    bool ok = true;
    for (const auto& b : c.sets)
      for (std::size_t x : c.sets[a].members) ok = ok && distance_to_set(c.space, x, b) < eps;
    if (ok) r.alpha_all = a;
  }
  // right side: against the intersection only
  for (std::size_t a = 0; a < c.sets.size() && !r.alpha_limit; ++a) {
    bool ok = true;
    for (std::size_t x : c.sets[a].members) ok = ok && distance_to_set(c.space, x, X) < eps;
    if (ok) r.alpha_limit = a;
  }
  r.equivalent = r.alpha_all.has_value() == r.alpha_limit.has_value();
  return r;
}

Chase chase_limit_point(const LazyChain& c, const std::function<std::size_t(std::size_t)>& n_of_m, Element x0,
                        std::size_t m0, std::size_t budget) {
  if (c.horizon == 0) throw Error("lazy chain horizon must be positive");
  auto index = [&](std::size_t m) { return std::min(n_of_m(m), c.horizon - 1); };
  const PointSet last = c.member(c.horizon - 1);
  check_member(c.space, last, c.horizon - 1);
  const std::size_t first = index(m0 + 1);
  PointSet start = c.member(first);
  if (!start.contains(x0))
    throw Error("x0 = " + c.space.name(x0) + " is not in member " + std::to_string(first));

  Chase out;
  out.trace.push_back({0, first, x0, 0, 1});
  Element x = x0;
  Rational total = 0;
  for (std::size_t k = 0; !last.contains(x); ++k) {
    if (k >= budget) throw Error("chase did not reach the horizon member within " + std::to_string(budget) + " steps");
    const std::size_t target = index(m0 + k + 2);
    PointSet next = c.member(target);
    check_member(c.space, next, target);
    const Rational bound = pow2_neg(m0 + k + 1);
    Element best = next.members.front();
    for (std::size_t y : next.members)
      if (c.space.dist(x, y) < c.space.dist(x, best)) best = y;
    const Rational gap = c.space.dist(x, best);
    if (!(gap < bound))
      throw Error("step " + std::to_string(k + 1) + ": no point of member " + std::to_string(target) +
                  " within " + to_string(bound) + " of " + c.space.name(x) + " (nearest at " + to_string(gap) + ")");
    x = best;
    total += gap;
    out.trace.push_back({k + 1, target, x, gap, bound});
  }
  out.limit = x;
  out.distance = c.space.dist(x0, x);
  if (!(out.distance < pow2_neg(m0)) || out.distance > total)
    throw std::logic_error("chase distance bound violated");
  return out;
}

DefinableLimit definable_limit(const DescendingChain& c) {
  validate_chain(c);
  DefinableLimit r;
  r.limit = chain_limit(c);
  if (r.limit.empty()) throw Error("chain intersection is empty");
  std::set<Rational> values;
  for (const auto& v : c.space.metric.values)
    if (v > 0) values.insert(v);
  std::vector<Rational> grid(values.begin(), values.end());
  std::set<Rational> eps(values.begin(), values.end());
  Rational prev = 0;
  for (const auto& v : grid) {
    eps.insert((prev + v) / 2);
    prev = v;
  }
  eps.insert(Rational(1));
  for (const auto& e : eps) {
    LimitRow row;
    row.eps = e;
    row.alpha = *approx_stabilizes(c, e).alpha;
    row.inside_limit_ball = true;
    for (std::size_t x : c.sets[row.alpha].members)
      row.inside_limit_ball = row.inside_limit_ball && distance_to_set(c.space, x, r.limit) < e;
    r.table.push_back(row);
  }
  r.distance = distance_table(c.space, r.limit);
  r.certificate = certify_distance_predicate(c.space, r.distance);
  r.certified = r.certificate.pass && std::all_of(r.table.begin(), r.table.end(),
                                                  [](const LimitRow& row) { return row.inside_limit_ball; });
  return r;
}

FamilyLimit uniform_family_limit(const FiniteStructure& m, const std::vector<Table>& family,
                                 const std::vector<Table>& candidates) {
  if (family.empty()) throw Error("empty family");
  const Table& first = family.front();
  for (const auto& t : family)
    if (t.arity != first.arity || t.universe != m.size()) throw Error("family tables differ in shape");
  for (std::size_t a = 1; a < family.size(); ++a)
    for (std::size_t i = 0; i < first.size(); ++i)
      if (family[a][i] < family[a - 1][i]) {
        std::string tuple;
        for (Element e : first.tuple(i)) tuple += (tuple.empty() ? "" : ",") + m.name(e);
        throw Error("family not nondecreasing: member " + std::to_string(a) + " drops at (" + tuple + ")");
      }
  FamilyLimit r;
  r.limit = family.back();
  for (std::size_t i = 0; i < candidates.size() && !r.instance; ++i)
    if (candidates[i] == r.limit) r.instance = i;
  r.zero_set = zero_set(r.limit);
  r.zero_intersection = zero_set(first);
  for (const auto& t : family) {
    PointSet z = zero_set(t);
    std::vector<std::size_t> keep;
    std::set_intersection(r.zero_intersection.members.begin(), r.zero_intersection.members.end(),
                          z.members.begin(), z.members.end(), std::back_inserter(keep));
    r.zero_intersection.members = std::move(keep);
  }
  r.zero_sets_agree = r.zero_set == r.zero_intersection;
  r.distance_predicate = certify_distance_predicate(m, r.limit).pass;
  return r;
}

}  // namespace contologic
