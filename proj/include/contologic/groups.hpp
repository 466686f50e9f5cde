#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "contologic/definable_sets.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// Group G inside a finite metric structure. When `members` is the whole
/// universe this is a plain metric group; otherwise the ambient points
/// outside G are only reachable through `ambient_op`.
struct FiniteMetricGroup {
  static constexpr Element none = SIZE_MAX;

  FiniteStructure space;
  std::vector<Element> members;     // sorted
  std::vector<Element> op;          // n*n, `none` outside G x G
  Element identity = 0;
  std::vector<Element> inverse;     // n, `none` outside G
  std::vector<Element> ambient_op;  // optional n*n multiplication on the whole universe

  std::size_t size() const { return space.size(); }
  bool is_member(Element e) const;
  bool whole() const { return members.size() == space.size(); }
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  /// ambient_op when present, else op (which must be defined).
  Element mul_ext(Element a, Element b) const;
  const Table& metric() const { return space.metric; }
};

/// Cyclic group Z/n with the given metric (n x n).
FiniteMetricGroup cyclic_group(std::size_t n, Table metric);

/// Closure, identity, inverses and associativity, table-checked.
StructureReport check_group(const FiniteMetricGroup& g);

struct InvarianceFlags {
  bool left = true;
  bool right = true;
  bool inverse = true;
  std::optional<std::array<Element, 3>> left_witness;   // (z, x, y): d(zx, zy) != d(x, y)
  std::optional<std::array<Element, 3>> right_witness;  // (z, x, y): d(xz, yz) != d(x, y)
  std::optional<std::array<Element, 2>> inverse_witness;
};

/// Scans z, then x, then y over G. Throws if d is not a metric on G and
/// std::logic_error if the flags contradict left+inverse => right,
/// right+inverse => left or left+right => inverse.
InvarianceFlags check_invariance(const FiniteMetricGroup& g, const Table& d);

/// d1(x, y) = max_{u, v in G} d(u x v, u y v). G must be the whole universe.
/// The result is checked to be a bi-invariant, inverse-invariant metric.
Table invariant_metric(const FiniteMetricGroup& g);

bool is_subgroup(const FiniteMetricGroup& g, const std::vector<Element>& H);

struct CosetDistance {
  Rational value;                           // min over cosets of min over the coset
  std::vector<std::vector<Element>> cosets;
};

/// d(x, G) via the cosets gH. Throws if H is not a subgroup.
CosetDistance coset_union_distance(const FiniteMetricGroup& g, const std::vector<Element>& H, Element x);

struct ApproxProduct {
  FiniteMetricGroup group;  // G inside the ambient space
  Table phi;                // ternary (x, y, z) over the ambient universe
  Rational eps;
  PointSet X;
  PointSet Y;
};

/// phi(x, y, z) = d(x * y, z) with the ambient multiplication.
Table exact_product_table(const FiniteMetricGroup& g);

struct ProductViolation {
  std::string kind;  // containment, left-isometry, right-isometry
  std::vector<Element> witness;
  Rational amount;
};

struct ProductAudit {
  bool certified = false;
  Rational max_defect;  // least eps certifying the isometry conditions
  bool containment = true;
  std::vector<ProductViolation> violations;
};

/// Exhaustive checks over Y: Y*Y inside X, and
/// |d(y, y') - d(z, z')| <= eps for z in x*y, z' in x*y' (and y*x, y'*x).
/// Throws if phi is not normalized, does not restrict to the group law on
/// G, or the sets are not nested G <= Y <= X.
ProductAudit audit_approx_product(const ApproxProduct& ap);

/// x *~ y = zero set of phi(x, y, .).
std::vector<Element> approx_product(const ApproxProduct& ap, Element x, Element y);

struct TranslateCopy {
  std::vector<Element> Z;
  Rational distance_y0_G;
  Rational distance_G_Z;
  bool separated = false;        // d(G, Z) > r - eps
  std::size_t sep_G = 0;         // sep_r(G)
  std::size_t sep_Z = 0;         // sep_{r-eps}(Z)
  bool sep_transfer = false;     // sep_Z >= sep_G
};

/// Z = union over h in G of y0 *~ h. Requires a certified audit at eps,
/// y0 in Y and d(y0, G) > r > eps >= 0.
TranslateCopy translate_copy(const ApproxProduct& ap, Element y0, const Rational& r, const Rational& eps);

}  // namespace contologic
