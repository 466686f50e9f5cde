#pragma once

#include <optional>
#include <string>
#include <vector>

#include "contologic/definable_sets.hpp"
#include "contologic/pl_map.hpp"
#include "contologic/structure.hpp"

namespace contologic {

/// Throws unless t is a symmetric reflexive binary table with values in [0,1].
void require_symmetric_reflexive(const Table& t);

/// g(t, u) = sup{phi(x, y) : exists z, phi(x, z) <= t and phi(y, z) <= u},
/// tabulated on the grid of phi values and extended as a right-continuous
/// step function.
class StepFunction2D {
public:
  StepFunction2D(std::vector<Rational> grid, std::vector<Rational> values);

  const std::vector<Rational>& grid() const { return grid_; }
  /// Largest grid value <= t (the grid always contains 0).
  const Rational& floor_grid(const Rational& t) const;
  /// Least grid value > t, or 1 when there is none.
  Rational next_grid(const Rational& t) const;
  Rational operator()(const Rational& t, const Rational& u) const;
  const Rational& at(std::size_t i, std::size_t j) const { return values_[i * grid_.size() + j]; }

private:
  std::size_t floor_index(const Rational& t) const;
  std::vector<Rational> grid_;
  std::vector<Rational> values_;
};

StepFunction2D compute_g(const Table& phi);

struct GHypotheses {
  bool strong = true;       // g(0, t) = t on the grid
  bool weak = true;         // g(0, t) <= t on the grid
  bool right_slack = true;  // g(u, w) < t implies some v > u with g(v, w) < t, for grid u < 1
  bool top_saturated = true;  // g(1, w) = 1 whenever 1 is on the grid, i.e. slack at u = 1
  bool symmetric = true;
  bool monotone = true;
  std::vector<Rational> strong_failures;  // grid t with g(0, t) != t
  std::vector<Rational> weak_failures;    // grid t with g(0, t) > t
};

GHypotheses check_g_hypotheses(const StepFunction2D& g);

/// f on {k / 2^N : 0 <= k <= 2^N}.
struct DyadicF {
  unsigned level = 0;
  std::vector<Rational> values;

  Rational point(std::size_t k) const;  // k / 2^N
};

enum class FStrategy {
  GridHugging,      // floor_grid(k/2^N) if admissible, else k/2^N (same grid cell)
  CompleteMinimal,  // always just above the lower bound
};

struct BlockingTriple {
  std::size_t i, j, k;  // g(f(i/2^N), f(j/2^N)) >= k/2^N with i + j = k
  Rational lower;       // the violated lower bound
};

struct DyadicResult {
  std::optional<DyadicF> f;
  std::optional<BlockingTriple> blocked;
};

/// Fills f(k/2^N) in order of k subject to f(k-1) < f(k) <= k/2^N and
/// g(f(i), f(j)) < f(k) for all i, j >= 1 with i + j = k.
DyadicResult build_dyadic_f(const StepFunction2D& g, unsigned level,
                            FStrategy strategy = FStrategy::GridHugging);

/// Checks the three conclusions of the f construction exhaustively.
bool verify_dyadic_f(const StepFunction2D& g, const DyadicF& f);

/// h(t) = min{u in D_N : f(u) >= t}, 1 when no such u; step-left-continuous.
/// With Interpolation::Linear the same breakpoints are joined linearly.
PLMap weak_inverse(const DyadicF& f, Interpolation mode = Interpolation::StepLeft);

struct RepairCertificate {
  PLMap h;
  Table table;
  bool already_pseudometric = false;
  unsigned level = 0;
  FStrategy strategy = FStrategy::GridHugging;
  std::optional<DyadicF> f;
  bool triangle_ok = false;
  bool separating_input = false;
  bool is_metric = false;
  /// Same f with linearly interpolated h; checked, not required.
  bool linear_triangle_ok = false;
  GHypotheses hypotheses;
};

/// Applies h pointwise to a table.
Table compose(const PLMap& h, const Table& t);

/// compute_g, build_dyadic_f with escalating level, weak_inverse, h o phi,
/// then an exhaustive check. Throws with the blocking constraint if no
/// verified table is found.
RepairCertificate repair_pseudometric(const Table& phi);

/// max_z |phi(x, z) - phi(y, z)|.
Table repair_via_sup(const Table& phi);

/// max_{z in X} |psi1(x, z) - psi1(y, z)|, after checking psi1 = d1 on X^2.
/// In metric mode the separator max_z |phi(x) /\ d(x, z) - phi(y) /\ d(y, z)|
/// with phi = d(., X) is combined by pointwise max.
Table extend_partial_metric(const FiniteStructure& m, const PointSet& X, const Table& d1,
                            const Table& psi1, bool metric_mode);
Table separator_metric(const FiniteStructure& m, const PointSet& X);

/// d_{2,n}(x, y) = max_z |phi_n(z) /\ psi1(x, z) - phi_n(z) /\ psi1(y, z)| with
/// phi_n = 1 -. 2^n phi.
Table approximating_pseudometric(const FiniteStructure& m, const PointSet& X, const Table& d1,
                                 const Table& psi1, const Table& phi, unsigned n);
/// Least n with 2^n * (least positive phi) >= 1.
unsigned stabilization_index(const Table& phi);

/// Largest step map D with d2 < D(e) => d1 < e: D(e) = min{d2 : d1 >= e}.
PLMap uniform_equivalence_modulus(const Table& d1, const Table& d2);

/// New structure with metric d1; the old metric becomes predicate "d2";
/// every modulus is replaced by the realized one against d1.
FiniteStructure swap_metric(const FiniteStructure& m, const Table& d1);

}  // namespace contologic
