#include "contologic/metric_forge.hpp"

#include <algorithm>
#include <set>

namespace contologic {

void require_symmetric_reflexive(const Table& t) {
  if (t.arity != 2) throw Error("expected a binary table");
  for (Element x = 0; x < t.universe; ++x) {
    if (t(x, x) != 0) throw Error("table is not reflexive at " + std::to_string(x));
    for (Element y = 0; y < t.universe; ++y) {
      if (!truth::in_unit_interval(t(x, y))) throw Error("table value outside [0,1]");
      if (t(x, y) != t(y, x)) throw Error("table is not symmetric");
    }
  }
}

// ---------------------------------------------------------------------------
// g

StepFunction2D::StepFunction2D(std::vector<Rational> grid, std::vector<Rational> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.empty() || grid_.front() != 0) throw Error("step function grid must start at 0");
  if (values_.size() != grid_.size() * grid_.size()) throw Error("step function table has the wrong size");
}

std::size_t StepFunction2D::floor_index(const Rational& t) const {
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  return static_cast<std::size_t>(it - grid_.begin()) - 1;
}

const Rational& StepFunction2D::floor_grid(const Rational& t) const { return grid_[floor_index(t)]; }

Rational StepFunction2D::next_grid(const Rational& t) const {
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  return it == grid_.end() ? Rational(1) : *it;
}

Rational StepFunction2D::operator()(const Rational& t, const Rational& u) const {
  return at(floor_index(t), floor_index(u));
}

StepFunction2D compute_g(const Table& phi) {
  require_symmetric_reflexive(phi);
  std::set<Rational> distinct(phi.values.begin(), phi.values.end());
  std::vector<Rational> grid(distinct.begin(), distinct.end());
  const std::size_t n = phi.universe, s = grid.size();
  std::vector<Rational> values(s * s, 0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      Rational best = 0;
      for (Element z = 0; z < n; ++z)
        for (Element x = 0; x < n; ++x) {
          if (phi(x, z) > grid[i]) continue;
          for (Element y = 0; y < n; ++y)
            if (phi(y, z) <= grid[j] && phi(x, y) > best) best = phi(x, y);
        }
      values[i * s + j] = best;
    }
  return StepFunction2D(std::move(grid), std::move(values));
}

GHypotheses check_g_hypotheses(const StepFunction2D& g) {
  GHypotheses r;
  const auto& grid = g.grid();
  const std::size_t s = grid.size();
  for (std::size_t i = 0; i < s; ++i) {
    const Rational& v = g.at(0, i);
    if (v != grid[i]) {
      r.strong = false;
      r.strong_failures.push_back(grid[i]);
    }
    if (v > grid[i]) {
      r.weak = false;
      r.weak_failures.push_back(grid[i]);
    }
    if (g(1, grid[i]) != 1) r.top_saturated = false;
    for (std::size_t j = 0; j < s; ++j) {
      if (g.at(i, j) != g.at(j, i)) r.symmetric = false;
      if (i + 1 < s && g.at(i + 1, j) < g.at(i, j)) r.monotone = false;
      if (j + 1 < s && g.at(i, j + 1) < g.at(i, j)) r.monotone = false;
    }
  }
  // A right-continuous step function is constant on [grid_i, grid_{i+1}),
  // so slack to the right exists at every u < 1.
  r.right_slack = true;
  return r;
}

// ---------------------------------------------------------------------------
// f and h

Rational DyadicF::point(std::size_t k) const { return Rational(k) * pow2_neg(level); }

namespace {

Rational lower_bound_at(const StepFunction2D& g, const std::vector<Rational>& f, std::size_t k,
                        std::optional<BlockingTriple>& arg) {
  Rational low = f[k - 1];
  arg.reset();
  for (std::size_t i = 1; i < k; ++i) {
    Rational v = g(f[i], f[k - i]);
    if (v >= low) {
      if (v > low || !arg) arg = BlockingTriple{i, k - i, k, v};
      low = v;
    }
  }
  return low;
}

}  // namespace

DyadicResult build_dyadic_f(const StepFunction2D& g, unsigned level, FStrategy strategy) {
  const std::size_t top = std::size_t{1} << level;
  std::vector<Rational> f(top + 1, 0);
  for (std::size_t k = 1; k <= top; ++k) {
    const Rational hi = Rational(k) * pow2_neg(level);
    std::optional<BlockingTriple> arg;
    const Rational low = lower_bound_at(g, f, k, arg);
    if (low >= hi) {
      BlockingTriple b = arg.value_or(BlockingTriple{0, k - 1, k, low});
      return {std::nullopt, b};
    }
    const Rational cap = truth::min(g.next_grid(low), hi);
    Rational choice = (low + cap) / 2;
    if (strategy == FStrategy::GridHugging) {
      // otherwise hi shares the grid cell of low, so g cannot tell it from the midpoint
      const Rational& c = g.floor_grid(hi);
      choice = c > low ? c : hi;
    }
    f[k] = choice;
  }
  return {DyadicF{level, std::move(f)}, std::nullopt};
}

bool verify_dyadic_f(const StepFunction2D& g, const DyadicF& f) {
  const std::size_t top = f.values.size() - 1;
  if (f.values[0] != 0) return false;
  for (std::size_t k = 1; k <= top; ++k) {
    if (f.values[k] <= f.values[k - 1]) return false;
    if (f.values[k] > f.point(k)) return false;
    for (std::size_t i = 1; i < k; ++i)
      if (!(g(f.values[i], f.values[k - i]) < f.values[k])) return false;
  }
  return true;
}

PLMap weak_inverse(const DyadicF& f, Interpolation mode) {
  std::vector<Breakpoint> points{{0, 0}};
  for (std::size_t k = 1; k < f.values.size(); ++k) points.push_back({f.values[k], f.point(k)});
  if (points.back().x != 1) points.push_back({1, 1});
  return PLMap(std::move(points), mode);
}

// ---------------------------------------------------------------------------
// repair

Table compose(const PLMap& h, const Table& t) {
  Table out = t;
  for (auto& v : out.values) v = h(v);
  return out;
}

namespace {

bool separates(const Table& t) {
  for (Element x = 0; x < t.universe; ++x)
    for (Element y = 0; y < t.universe; ++y)
      if (x != y && t(x, y) == 0) return false;
  return true;
}

unsigned escalation_bound(const StepFunction2D& g) {
  const auto& grid = g.grid();
  Rational gap = 1;
  for (std::size_t i = 1; i < grid.size(); ++i) gap = truth::min(gap, grid[i] - grid[i - 1]);
  unsigned c = 0;
  while (pow2_neg(c) > gap) ++c;  // ceil(log2(1/gap))
  return 2 + c;
}

}  // namespace

RepairCertificate repair_pseudometric(const Table& phi) {
  require_symmetric_reflexive(phi);
  RepairCertificate cert;
  cert.separating_input = separates(phi);
  StepFunction2D g = compute_g(phi);
  cert.hypotheses = check_g_hypotheses(g);

  if (is_pseudometric(phi)) {
    cert.already_pseudometric = true;
    cert.h = PLMap::identity();
    cert.table = phi;
    cert.triangle_ok = true;
    cert.linear_triangle_ok = true;
    cert.is_metric = cert.separating_input;
    return cert;
  }

  const unsigned bound = escalation_bound(g);
  std::optional<BlockingTriple> last_block;
  auto attempt = [&](unsigned level, FStrategy strategy) {
    DyadicResult r = build_dyadic_f(g, level, strategy);
    if (!r.f) {
      last_block = r.blocked;
      return false;
    }
    PLMap h = weak_inverse(*r.f);
    Table t = compose(h, phi);
    if (!is_pseudometric(t)) return false;
    cert.h = h;
    cert.table = std::move(t);
    cert.level = level;
    cert.strategy = strategy;
    cert.f = std::move(r.f);
    return true;
  };
  bool done = false;
  for (unsigned level = 1; level <= bound && !done; ++level) done = attempt(level, FStrategy::GridHugging);
  if (!done) done = attempt(bound, FStrategy::CompleteMinimal);
  if (!done) {
    std::string msg = "metric repair infeasible up to level " + std::to_string(bound);
    if (last_block)
      msg += ": g(f(" + std::to_string(last_block->i) + "), f(" + std::to_string(last_block->j) +
             ")) = " + to_string(last_block->lower) + " blocks f(" + std::to_string(last_block->k) + ")";
    throw Error(msg);
  }
  cert.triangle_ok = true;
  cert.is_metric = cert.separating_input && separates(cert.table);
  cert.linear_triangle_ok = is_pseudometric(compose(weak_inverse(*cert.f, Interpolation::Linear), phi));
  return cert;
}

Table repair_via_sup(const Table& phi) {
  require_symmetric_reflexive(phi);
  const std::size_t n = phi.universe;
  Table out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) out(x, y) = truth::max(out(x, y), truth::absdiff(phi(x, z), phi(y, z)));
  return out;
}

// ---------------------------------------------------------------------------
// partial metrics

namespace {

void check_partial_metric(const FiniteStructure& m, const PointSet& X, const Table& d1, const Table& psi1) {
  if (X.arity != 1) throw Error("partial metric domain must be a unary set");
  if (X.empty()) throw Error("partial metric on an empty set");
  if (d1.arity != 2 || psi1.arity != 2 || d1.universe != m.size() || psi1.universe != m.size())
    throw Error("partial metric tables must be binary over the universe");
  for (std::size_t x : X.members)
    for (std::size_t y : X.members) {
      if (psi1(x, y) != d1(x, y))
        throw Error("psi1 disagrees with d1 at (" + m.name(x) + "," + m.name(y) + ")");
      for (std::size_t z : X.members)
        if (d1(x, y) > d1(x, z) + d1(z, y))
          throw Error("d1 violates the triangle inequality at (" + m.name(x) + "," + m.name(z) + "," +
                      m.name(y) + ")");
      if (d1(x, y) != d1(y, x) || (x == y && d1(x, y) != 0)) throw Error("d1 is not a pseudo-metric on X");
    }
}

}  // namespace

Table separator_metric(const FiniteStructure& m, const PointSet& X) {
  Table phi = distance_table(m, X);
  const std::size_t n = m.size();
  Table out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z)
        out(x, y) = truth::max(out(x, y), truth::absdiff(truth::min(phi[x], m.dist(x, z)),
                                                         truth::min(phi[y], m.dist(y, z))));
  return out;
}

Table extend_partial_metric(const FiniteStructure& m, const PointSet& X, const Table& d1,
                            const Table& psi1, bool metric_mode) {
  check_partial_metric(m, X, d1, psi1);
  const std::size_t n = m.size();
  Table out(n, 2);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (std::size_t z : X.members) out(x, y) = truth::max(out(x, y), truth::absdiff(psi1(x, z), psi1(y, z)));
  if (metric_mode) {
    Table sep = separator_metric(m, X);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = truth::max(out[i], sep[i]);
  }
  return out;
}

Table approximating_pseudometric(const FiniteStructure& m, const PointSet& X, const Table& d1,
                                 const Table& psi1, const Table& phi, unsigned n) {
  check_partial_metric(m, X, d1, psi1);
  if (zero_set(phi) != X) throw Error("zero set of phi differs from X");
  const std::size_t size = m.size();
  const Rational scale = 1 / pow2_neg(n);
  std::vector<Rational> phi_n(size);
  for (Element z = 0; z < size; ++z) phi_n[z] = truth::tsub(1, scale * phi[z]);
  Table out(size, 2);
  for (Element x = 0; x < size; ++x)
    for (Element y = 0; y < size; ++y)
      for (Element z = 0; z < size; ++z)
        out(x, y) = truth::max(out(x, y), truth::absdiff(truth::min(phi_n[z], psi1(x, z)),
                                                         truth::min(phi_n[z], psi1(y, z))));
  return out;
}

unsigned stabilization_index(const Table& phi) {
  std::optional<Rational> least;
  for (const auto& v : phi.values)
    if (v > 0 && (!least || v < *least)) least = v;
  if (!least) return 0;
  unsigned n = 0;
  while (*least < pow2_neg(n)) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// uniform equivalence and swap

PLMap uniform_equivalence_modulus(const Table& d1, const Table& d2) {
  if (!is_metric(d1) || !is_metric(d2)) throw Error("uniform equivalence needs two metrics");
  if (d1.universe != d2.universe) throw Error("metrics over different universes");
  std::set<Rational> levels;
  for (const auto& v : d1.values)
    if (v > 0) levels.insert(v);
  std::vector<Breakpoint> points{{0, 0}};
  for (const Rational& e : levels) {
    Rational best = 1;
    for (std::size_t i = 0; i < d1.size(); ++i)
      if (d1[i] >= e) best = truth::min(best, d2[i]);
    points.push_back({e, best});
  }
  if (points.back().x != 1) points.push_back({1, 1});
  return PLMap(std::move(points), Interpolation::StepLeft);
}

FiniteStructure swap_metric(const FiniteStructure& m, const Table& d1) {
  if (d1.arity != 2 || d1.universe != m.size()) throw Error("new metric has the wrong shape");
  StructureReport report = check_metric(d1, m.universe, true);
  if (!report.ok) {
    const auto& v = report.violations.front();
    std::string w;
    for (const auto& s : v.witness) w += (w.empty() ? "" : ",") + s;
    throw Error("new metric fails " + v.kind + " at (" + w + "): " + v.detail);
  }
  if (m.signature.find_predicate("d2")) throw Error("structure already has a predicate named 'd2'");

  FiniteStructure out = m;
  out.metric = d1;
  for (auto& sym : out.signature.predicates) sym.modulus = realized_modulus(out.predicate(sym.name), d1);
  for (auto& sym : out.signature.functions) sym.modulus = realized_function_modulus(out, sym.name);
  out.set_predicate("d2", m.metric, realized_modulus(m.metric, d1));
  return out;
}

}  // namespace contologic
