#include <gtest/gtest.h>

#include "contologic/definable_sets.hpp"
#include "contologic/metric_forge.hpp"
#include "contologic/structure_io.hpp"
#include "oracles.hpp"

using namespace contologic;

namespace {

FiniteStructure load(const char* name) { return load_structure(std::filesystem::path(FIXTURE_DIR) / name); }

constexpr Element P = 0, Q = 1, R = 2;

Table discrete(std::size_t n, const Rational& v) {
  Table t(n, 2, v);
  for (std::size_t i = 0; i < n; ++i) t(i, i) = 0;
  return t;
}

}  // namespace

TEST(ComputeG, TriPhi) {
  auto g = compute_g(load("triphi.json").predicate("phi"));
  EXPECT_EQ(g(rat(1, 8), 0), rat(1, 8));
  EXPECT_EQ(g(rat(1, 2), rat(1, 8)), rat(3, 4));
  EXPECT_EQ(g(0, 0), 0);
  auto h = check_g_hypotheses(g);
  EXPECT_TRUE(h.weak);
  EXPECT_TRUE(h.weak_failures.empty());
}

TEST(ComputeG, MetricAndZero) {
  const Table d = load("path3.json").metric;
  auto g = compute_g(d);
  for (const auto& t : g.grid())
    for (const auto& u : g.grid()) EXPECT_LE(g(t, u), t + u);
  auto zero = compute_g(Table(3, 2));
  for (const auto& t : zero.grid()) EXPECT_EQ(zero(t, t), 0);
  EXPECT_TRUE(check_g_hypotheses(zero).weak);
}

TEST(DyadicF, IdentityWhenUnconstrained) {
  auto r = build_dyadic_f(compute_g(Table(3, 2)), 3);
  ASSERT_TRUE(r.f);
  for (std::size_t k = 0; k < r.f->values.size(); ++k) EXPECT_EQ(r.f->values[k], r.f->point(k));
  auto h = weak_inverse(*r.f);
  EXPECT_EQ(h(0), 0);
  for (std::size_t k = 0; k < r.f->values.size(); ++k) EXPECT_EQ(h(r.f->point(k)), r.f->point(k));
}

TEST(DyadicF, MetricAndTriPhi) {
  // g(1/4, 1/4) = 1/2 forces f(1/4) < 1/4, which grid-hugging never picks
  auto gm = compute_g(load("path3.json").metric);
  EXPECT_FALSE(build_dyadic_f(gm, 4).f);
  auto metric = build_dyadic_f(gm, 4, FStrategy::CompleteMinimal);
  ASSERT_TRUE(metric.f);
  EXPECT_TRUE(verify_dyadic_f(gm, *metric.f));
  auto g = compute_g(load("triphi.json").predicate("phi"));
  bool found = false;
  for (unsigned n = 1; n <= 8 && !found; ++n) {
    auto r = build_dyadic_f(g, n);
    if (r.f) {
      found = true;
      EXPECT_TRUE(verify_dyadic_f(g, *r.f));
    }
  }
  EXPECT_TRUE(found);
}

TEST(WeakInverse, Halving) {
  DyadicF f;
  f.level = 3;
  for (long k = 0; k <= 8; ++k) f.values.push_back(rat(k, 16));
  auto h = weak_inverse(f);
  EXPECT_EQ(h(0), 0);
  for (long k = 0; k <= 8; ++k) EXPECT_EQ(h(rat(k, 16)), std::min(Rational(1), rat(k, 8)));
  EXPECT_EQ(h(1), 1);
}

TEST(Repair, FixtureExamples) {
  const Table d = load("path3.json").metric;
  auto same = repair_pseudometric(d);
  EXPECT_TRUE(same.already_pseudometric);
  EXPECT_EQ(same.table, d);

  const Table phi = load("triphi.json").predicate("phi");
  auto c = repair_pseudometric(phi);
  EXPECT_FALSE(c.already_pseudometric);
  EXPECT_TRUE(c.triangle_ok);
  EXPECT_TRUE(oracle::triangle(c.table));
  EXPECT_LE(c.table(P, R), c.table(P, Q) + c.table(Q, R));
  EXPECT_TRUE(c.is_metric);

  Table zero_off = d;
  zero_off(P, Q) = zero_off(Q, P) = 0;
  zero_off(P, R) = zero_off(R, P) = rat(1, 4);
  auto z = repair_pseudometric(zero_off);
  EXPECT_TRUE(z.triangle_ok);
  EXPECT_FALSE(z.separating_input);
  EXPECT_FALSE(z.is_metric);
}

TEST(Repair, RejectsAsymmetricInput) {
  Table t(2, 2);
  t(0, 1) = rat(1, 2);
  EXPECT_THROW(repair_pseudometric(t), Error);
}

TEST(RepairViaSup, FixtureExamples) {
  auto d = repair_via_sup(load("triphi.json").predicate("phi"));
  EXPECT_EQ(d(P, Q), rat(5, 8));
  EXPECT_EQ(d(Q, R), rat(1, 4));
  EXPECT_EQ(d(P, R), rat(3, 4));
  EXPECT_TRUE(oracle::triangle(d));
  const Table metric = load("path3.json").metric;
  EXPECT_EQ(repair_via_sup(metric), metric);
  EXPECT_EQ(repair_via_sup(Table(3, 2)), Table(3, 2));
}

TEST(PartialMetric, ExtensionAndApproximations) {
  auto m = load("path3.json");
  PointSet X = PointSet::of({P, Q});
  Table d1(3, 2);
  d1(P, Q) = d1(Q, P) = rat(1, 2);
  Table psi1 = discrete(3, rat(1, 2));
  psi1(P, R) = psi1(R, P) = 1;
  Table ext = extend_partial_metric(m, X, d1, psi1, false);
  EXPECT_EQ(ext(P, Q), rat(1, 2));
  EXPECT_TRUE(is_pseudometric(ext));

  Table phi(3, 1);
  phi[R] = rat(3, 8);
  for (unsigned n = 0; n <= stabilization_index(phi) + 1; ++n) {
    Table t = approximating_pseudometric(m, X, d1, psi1, phi, n);
    EXPECT_GE(t(P, Q), d1(P, Q)) << n;
  }
  EXPECT_EQ(approximating_pseudometric(m, X, d1, psi1, phi, stabilization_index(phi) + 5), ext);
}

TEST(UniformEquivalence, FixtureExamples) {
  const Table d = load("path3.json").metric;
  auto same = uniform_equivalence_modulus(d, d);
  for (const Rational& e : {rat(1, 4), rat(1, 2)}) EXPECT_EQ(same(e), e);
  Table half = d;
  for (auto& v : half.values) v /= 2;
  auto scaled = uniform_equivalence_modulus(d, half);
  for (const Rational& e : {rat(1, 4), rat(1, 2)}) EXPECT_EQ(scaled(e), e / 2);
  auto disc = uniform_equivalence_modulus(discrete(3, rat(1, 2)), d);
  for (const Rational& e : {rat(1, 8), rat(1, 4), rat(1, 2)}) EXPECT_EQ(disc(e), rat(1, 4));
}

TEST(SwapMetric, FixtureExamples) {
  auto m = load("path3.json");
  auto same = swap_metric(m, m.metric);
  EXPECT_EQ(same.metric, m.metric);
  EXPECT_EQ(same.predicate("d2"), m.metric);
  EXPECT_TRUE(check_structure(same).ok);
  auto swapped = swap_metric(m, discrete(3, rat(1, 2)));
  EXPECT_TRUE(check_structure(swapped).ok);
  EXPECT_EQ(swapped.predicate("d2"), m.metric);
  Table bad = discrete(3, rat(1, 8));
  bad(P, R) = bad(R, P) = 1;
  EXPECT_THROW(swap_metric(m, bad), Error);
}
