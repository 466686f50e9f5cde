#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "contologic/definable_sets.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// X_0 >= X_1 >= ... >= X_{n-1}, unary point sets.
struct DescendingChain {
  FiniteStructure space;
  std::vector<PointSet> sets;
};

/// Members produced on demand; indices at or past `horizon` are never requested.
struct LazyChain {
  FiniteStructure space;
  std::function<PointSet(std::size_t)> member;
  std::size_t horizon = 0;
};

/// Checks nesting and nonemptiness.
void validate_chain(const DescendingChain& c);

/// Intersection of all members.
PointSet chain_limit(const DescendingChain& c);

/// x in X_alpha with d(x, X_beta) >= eps.
struct BallFailure {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  Element point = 0;
  Rational distance;
};

struct Stabilization {
  std::optional<std::size_t> alpha;      // least alpha with X_alpha in B(X_beta, eps) for all beta
  std::optional<BallFailure> below;      // why alpha - 1 (or the last tried index) fails
};

/// Open balls: X_alpha in B(X_beta, eps) iff every point is at distance < eps.
Stabilization approx_stabilizes(const DescendingChain& c, const Rational& eps);

/// alpha ranges below the horizon, beta up to and including it (one set of
/// lookahead). Fails with a witness when no alpha below the horizon works.
Stabilization approx_stabilizes(const LazyChain& c, const Rational& eps);

struct LimitEquivalence {
  std::optional<std::size_t> alpha_all;    // exists alpha: X_alpha in B(X_beta, eps) for all beta
  std::optional<std::size_t> alpha_limit;  // exists alpha: X_alpha in B(X, eps)
  bool equivalent = false;
};

LimitEquivalence limit_equivalence(const DescendingChain& c, const Rational& eps);

struct ChaseStep {
  std::size_t k = 0;
  std::size_t member = 0;  // chain index the point was chosen from
  Element point = 0;
  Rational gap;            // d(x_{k-1}, x_k); 0 for k = 0
  Rational bound;          // 2^{-m0-k}; 1 for k = 0
};

struct Chase {
  Element limit = 0;
  Rational distance;  // d(x0, limit)
  std::vector<ChaseStep> trace;
};

/// Builds x_{k+1} in X_{n(m0+k+2)} with d(x_k, x_{k+1}) < 2^{-m0-k-1}, nearest
/// point first (lowest index on ties), until x_k lies in the horizon member.
/// Throws Error naming the step when a gap bound cannot be met, or when the
/// step budget runs out.
Chase chase_limit_point(const LazyChain& c, const std::function<std::size_t(std::size_t)>& n_of_m, Element x0,
                        std::size_t m0, std::size_t budget = 64);

struct LimitRow {
  Rational eps;
  std::size_t alpha = 0;
  bool inside_limit_ball = false;  // X_alpha in B(X, eps)
};

struct DefinableLimit {
  PointSet limit;
  std::vector<LimitRow> table;  // eps grid: positive distances, their midpoints, and 1
  Table distance;               // d(., X)
  DistanceCertificate certificate;
  bool certified = false;
};

DefinableLimit definable_limit(const DescendingChain& c);

struct FamilyLimit {
  Table limit;
  bool uniform = true;
  std::optional<std::size_t> instance;  // index into the candidate list equal to the limit
  PointSet zero_set;
  PointSet zero_intersection;
  bool zero_sets_agree = false;
  bool distance_predicate = false;  // limit passes D1/D2 (unary families only)
};

/// Family of tables over a common universe, pointwise nondecreasing in the
/// index. `candidates` is the parameter set searched for the limit.
FamilyLimit uniform_family_limit(const FiniteStructure& m, const std::vector<Table>& family,
                                 const std::vector<Table>& candidates = {});

}  // namespace contologic
