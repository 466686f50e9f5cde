#include <fstream>
#include <random>
#include <sstream>

#include "acceptance.hpp"
#include "contologic/chains.hpp"
#include "contologic/cli.hpp"
#include "contologic/demo.hpp"
#include "oracles.hpp"

using namespace contologic;
using oracle::q;

namespace acc {

namespace {

// least alpha with every point of X_alpha at distance < eps from each X_beta
std::optional<std::size_t> alpha_all(const DescendingChain& c, const Rational& eps) {
  const Table& d = c.space.metric;
  for (std::size_t a = 0; a < c.sets.size(); ++a) {
    bool ok = true;
    for (const auto& b : c.sets)
      for (std::size_t x : c.sets[a].members) ok = ok && oracle::dist_to(d, x, {b.members.begin(), b.members.end()}) < eps;
    if (ok) return a;
  }
  return std::nullopt;
}

std::optional<std::size_t> alpha_limit(const DescendingChain& c, const Rational& eps) {
  std::vector<Element> X;
  for (Element x = 0; x < c.space.size(); ++x) {
    bool all = true;
    for (const auto& s : c.sets) all = all && s.contains(x);
    if (all) X.push_back(x);
  }
  for (std::size_t a = 0; a < c.sets.size(); ++a) {
    bool ok = true;
    for (std::size_t x : c.sets[a].members) ok = ok && oracle::dist_to(c.space.metric, x, X) < eps;
    if (ok) return a;
  }
  return std::nullopt;
}

DescendingChain random_chain(std::mt19937& rng) {
  DescendingChain c;
  c.space = oracle::random_space(rng, 1 + rng() % 6);
  std::vector<Element> cur;
  for (Element x = 0; x < c.space.size(); ++x) cur.push_back(x);
  const std::size_t len = 1 + rng() % 5;
  for (std::size_t i = 0; i < len; ++i) {
    c.sets.push_back(PointSet::of(cur));
    std::vector<Element> next;
    for (Element x : cur)
      if (rng() % 3) next.push_back(x);
    if (next.empty()) next.push_back(cur[rng() % cur.size()]);
    cur = next;
  }
  return c;
}

}  // namespace

Outcome criterion_chains() {
  std::mt19937 rng(1212);
  const std::vector<Rational> grid{q(1, 16), q(1, 8), q(1, 4), q(3, 8), q(1, 2), q(3, 4), q(1)};
  std::string fail;
  std::size_t comparisons = 0, chases = 0, gaps = 0;
  for (int i = 0; i < 200 && fail.empty(); ++i) {
    auto c = random_chain(rng);
    for (const auto& eps : grid) {
      ++comparisons;
      auto left = alpha_all(c, eps), right = alpha_limit(c, eps);
      auto rep = limit_equivalence(c, eps);
      if (left.has_value() != right.has_value() || !rep.equivalent || rep.alpha_all != left || rep.alpha_limit != right) {
        fail = "chain " + std::to_string(i) + ": equivalence fails at eps " + to_string(eps);
        break;
      }
    }
    // valid stabilization indices from the oracle: n_m = alpha at 2^-m
    auto n_of_m = [&c](std::size_t m) { return *alpha_all(c, pow2_neg(static_cast<unsigned>(m))); };
    LazyChain lazy{c.space, [&c](std::size_t k) { return c.sets.at(std::min(k, c.sets.size() - 1)); }, c.sets.size()};
    for (std::size_t m0 = 0; m0 < 3 && fail.empty(); ++m0)
      for (std::size_t x0 : c.sets[n_of_m(m0 + 1)].members) {
        ++chases;
        auto ch = chase_limit_point(lazy, n_of_m, x0, m0);
        for (std::size_t k = 1; k < ch.trace.size(); ++k) {
          ++gaps;
          const auto& s = ch.trace[k];
          if (s.bound != pow2_neg(static_cast<unsigned>(m0 + k)) || !(s.gap < s.bound) ||
              s.gap != c.space.dist(ch.trace[k - 1].point, s.point))
            fail = "chain " + std::to_string(i) + ": gap bound violated at step " + std::to_string(k);
        }
        if (!(c.space.dist(x0, ch.limit) < pow2_neg(static_cast<unsigned>(m0))) || !c.sets.back().contains(ch.limit))
          fail = "chain " + std::to_string(i) + ": limit point too far or outside the intersection";
        if (!fail.empty()) break;
      }
    auto lim = definable_limit(c);
    Table want(c.space.size(), 1);
    for (Element x = 0; x < c.space.size(); ++x)
      want[x] = oracle::dist_to(c.space.metric, x, {c.sets.back().members.begin(), c.sets.back().members.end()});
    if (fail.empty() && (!lim.certified || lim.distance != want))
      fail = "chain " + std::to_string(i) + ": definable_limit not certified";
  }
  return {fail.empty(), fail.empty() ? "200 chains: " + std::to_string(comparisons) + " equivalence checks, " +
                                           std::to_string(chases) + " chases with " + std::to_string(gaps) +
                                           " gaps inside their bounds, all limits certified"
                                     : fail};
}

namespace {

// the displayed case formula, with 0 * inf = 0
Rational case_formula(const ExtRational& r, const Rational& qv) {
  if (qv == 0) return 0;
  if (!r.is_finite()) return (r.kind == ExtRational::Kind::PosInf) == (qv > 0) ? Rational(1) : Rational(0);
  Rational qr = qv * r.value;
  if (qr >= 1) return 1;
  if (qr <= 0) return 0;
  return qr;
}

}  // namespace

Outcome criterion_demo() {
  const std::vector<std::pair<ExtRational, Rational>> rows{
      {ExtRational::finite(q(1, 2)), 1}, {ExtRational::finite(q(1, 2)), 3}, {ExtRational::pos_inf(), 0}};
  const std::vector<Rational> stated{q(1, 2), 1, 0};
  std::string fail, got;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto d = demo_row(rows[i].first, rows[i].second);
    if (d.value != stated[i] || d.value != case_formula(rows[i].first, rows[i].second))
      fail = "P(qa) wrong for r=" + to_string(rows[i].first) + ", q=" + to_string(rows[i].second);
    got += (got.empty() ? "" : ", ") + to_string(d.value);
  }
  for (const auto& r : {ExtRational::neg_inf(), ExtRational::pos_inf(), ExtRational::finite(q(-3, 4))})
    for (const Rational& qv : {Rational(-2), Rational(0), q(1, 3), Rational(5)})
      if (demo_row(r, qv).value != case_formula(r, qv) && fail.empty())
        fail = "P(qa) wrong for r=" + to_string(r) + ", q=" + to_string(qv);
  return {fail.empty(), fail.empty() ? "P(qa) = " + got + " for (1/2,1), (1/2,3), (inf,0)" : fail};
}

Outcome criterion_golden_cli() {
  struct Case {
    std::vector<std::string> args;
    std::string file;
  };
  const std::vector<Case> cases{
      {{"certify-dist", "--structure", fixture("path3.json").string(), "--predicate", "d_to_p"}, "certify_dist.txt"},
      {{"repair-metric", "--structure", fixture("triphi.json").string()}, "repair_metric.txt"},
      {{"rank", "--space", fixture("tree_a.json").string(), "--eps", "1/8"}, "rank.txt"},
  };
  std::string fail;
  for (const auto& c : cases) {
    std::vector<const char*> argv{"contologic"};
    for (const auto& a : c.args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    std::ifstream in(golden(c.file), std::ios::binary);
    std::stringstream want;
    want << in.rdbuf();
    if (code != 0) fail += c.args[0] + " exited " + std::to_string(code) + "; ";
    else if (!in || want.str() != out.str()) fail += c.args[0] + " differs from " + c.file + "; ";
  }
  return {fail.empty(), fail.empty() ? "3 command lines exit 0 with byte-identical reports" : fail};
}

}  // namespace acc
