#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contologic/pl_map.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// Subset of universe^arity, as sorted flat tuple indices.
struct PointSet {
  std::size_t arity = 1;
  std::vector<std::size_t> members;

  static PointSet of(std::vector<Element> elements);  // arity 1
  bool contains(std::size_t flat) const;
  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
  bool operator==(const PointSet&) const = default;
};

PointSet zero_set(const Table& psi);

/// min over X of the max metric on tuples. Throws on empty X.
Rational distance_to_set(const FiniteStructure& m, std::size_t x, const PointSet& X);
/// The table x -> d(x, X).
Table distance_table(const FiniteStructure& m, const PointSet& X);

// Distance algebra. Tables are distance predicates of the argument sets.
Table distance_union(const Table& dx, const Table& dy);
/// d((x, y), X x Y) over universe^(a+b), with the max metric on products.
Table distance_product(const Table& dx, const Table& dy);
/// inf over y in Y of phi(x, y) for a table phi over universe^(a+b).
Table distance_parametric_union(const Table& phi, std::size_t x_arity, const PointSet& Y);

struct DistanceCertificate {
  bool pass = false;
  Rational d1_margin;
  Rational d2_margin;
  std::vector<std::size_t> d1_witness;  // (x, y) flat tuples
  std::optional<std::size_t> d2_witness;
};

/// D1 = sup_{x,y} (psi(x) -. psi(y) -. d(x,y)),
/// D2 = sup_x inf_y (psi(y) \/ (d(x,y) -. psi(x))).
/// pass iff both are 0 iff psi = d(., zero_set(psi)); the equivalence is
/// rechecked and a std::logic_error is thrown if it ever fails.
DistanceCertificate certify_distance_predicate(const FiniteStructure& m, const Table& psi);

struct ProjectionStep {
  std::size_t point;
  Rational value;     // psi(point)
  Rational gap;       // distance from previous point (0 for the first)
  Rational gap_bound; // psi(prev) + 2^-n-1 eps, 0 for the first
};

struct Projection {
  std::size_t point;
  std::vector<ProjectionStep> trace;
};

/// Iterates a_{n+1} with psi(a_{n+1}) < 2^-n-1 eps and
/// d(a_n, a_{n+1}) < psi(a_n) + 2^-n-1 eps until psi = 0.
Projection project_to_zero_set(const FiniteStructure& m, const Table& psi, std::size_t x,
                               const Rational& eps);

struct RelativizedSup {
  Rational delta;
  Rational k;
  Table psi_delta;  // min(1, k d(., X))
  Table zeta;       // phi -. psi_delta, over x, y
  Table sup_zeta;   // y -> sup_x zeta(x, y)
  Table sup_on_X;   // y -> sup_{x in X} phi(x, y)
  bool sandwich_ok = false;
};

/// phi is a binary table (x, y); X a set of x values.
RelativizedSup relativized_sup(const FiniteStructure& m, const Table& phi, const PointSet& X,
                               const Rational& eps);

struct ImplicationZeroSet {
  Table chi;
  std::vector<std::pair<Rational, Rational>> delta;  // (eps, delta(eps)) at the breakpoints
  bool zero_on_X = false;
  bool implication_holds = false;
};

/// delta(e) = min{phi(x) : x in X, psi(x) > e} (1 if none);
/// chi(x) = sum_n 2^-n-1 ((delta(2^-n) -. phi(x)) /\ (psi(x) -. 2^-n)), exact.
ImplicationZeroSet implication_zero_set(const FiniteStructure& m, const Table& phi, const Table& psi,
                                        const PointSet& X);
/// Value of delta(e) used by implication_zero_set.
Rational implication_delta(const Table& phi, const Table& psi, const PointSet& X, const Rational& e);

struct PartialPredicate {
  PointSet domain;
  std::vector<Rational> values;  // aligned with domain.members
  PLMap modulus;
};

/// min(1, min_{y in dom} f(y) + Delta(d(x, y))).
Table extend_partial_predicate(const FiniteStructure& m, const PartialPredicate& f);

/// phi0(x, y) -. inf_z phi0(x, z) for the last argument y.
Table normalize_graph_predicate(const Table& phi0);

struct CanonicalEmbedding {
  std::vector<std::vector<Rational>> sort;  // S3: distinct maps z -> value
  Table sort_metric;                        // sup difference on S3
  std::vector<std::size_t> theta;           // y -> index in sort
  std::vector<std::size_t> f_hat;           // x -> index in sort
  Table phi;                                // sup_z |phi0(x,z) - d(z,y)|
  bool eq1_ok = false;
  bool theta_isometric = false;
  bool f_hat_matches = false;               // f_hat = theta o f on X
  bool phi_is_distance = false;             // phi(x,y) = d(f_hat(x), theta(y))
};

/// f: X -> M as (x, f(x)) pairs; phi0 binary with phi0(x, .) = d(f(x), .) on X.
CanonicalEmbedding canonical_embed(const FiniteStructure& m,
                                   const std::vector<std::pair<Element, Element>>& f,
                                   const Table& phi0);

}  // namespace contologic
