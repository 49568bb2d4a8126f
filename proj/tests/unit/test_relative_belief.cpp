#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "dirprior/error.hpp"
#include "dirprior/relative_belief.hpp"
#include "oracles.hpp"

using namespace dirprior;

namespace {

const std::vector<std::int64_t> kTable1{983, 679, 134, 383, 416, 84, 2892, 2625, 570};

std::vector<double> normalised(const std::vector<std::int64_t>& f) {
  const double n = static_cast<double>(std::accumulate(f.begin(), f.end(), std::int64_t{0}));
  std::vector<double> p;
  for (auto v : f) p.push_back(static_cast<double>(v) / n);
  return p;
}

// psi by explicit marginal sums over a nested table.
double psi_brute(const std::vector<std::vector<double>>& t) {
  double out = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t[0].size(); ++j) {
      if (t[i][j] == 0.0) continue;
      double ri = 0.0;
      double cj = 0.0;
      for (double v : t[i]) ri += v;
      for (const auto& row : t) cj += row[j];
      out += t[i][j] * std::log(t[i][j] / (ri * cj));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("contingency shape") {
  const ContingencyShape s(3, 4);
  CHECK(s.cells() == 12);
  CHECK(s.index(0, 0) == 0);
  CHECK(s.index(1, 2) == 6);
  CHECK(s.index(2, 3) == 11);
  CHECK_THROWS_AS(ContingencyShape(1, 3), Error);
}

TEST_CASE("discretisation grid") {
  const DiscretizationGrid g(0.1, 4);
  CHECK(g.bin_of(0.0) == 0);
  CHECK(g.bin_of(0.05) == 0);
  CHECK(g.bin_of(0.15) == 1);
  CHECK(g.bin_of(0.25) == 2);
  CHECK(g.bin_of(0.35) == 3);
  CHECK(g.bin_of(7.0) == 3);
  CHECK(g.bin_of(-1e-17) == 0);
  CHECK(g.lower_edge(2) == doctest::Approx(0.2));
  CHECK(DiscretizationGrid::covering(0.01, 0.0).bins() == 2);
  CHECK(DiscretizationGrid::covering(0.01, 0.035).bins() == 5);
  CHECK_THROWS_AS(DiscretizationGrid(0.0, 3), Error);
  CHECK_THROWS_AS(DiscretizationGrid(0.1, 1), Error);
}

TEST_CASE("psi on known tables") {
  const ContingencyShape s22(2, 2);
  const std::vector<double> p{0.3, 0.2, 0.2, 0.3};
  CHECK(kl_independence_psi(p, s22) ==
        doctest::Approx(0.6 * std::log(1.2) + 0.4 * std::log(0.8)).epsilon(1e-14));
  CHECK(kl_independence_psi(p, s22) == doctest::Approx(0.02013).epsilon(1e-3));

  const ContingencyShape s33(3, 3);
  CHECK(kl_independence_psi(normalised(kTable1), s33) ==
        doctest::Approx(0.002318).epsilon(1e-3));

  // A table with a structural zero.
  const std::vector<double> z{0.5, 0.0, 0.0, 0.5};
  CHECK(kl_independence_psi(z, s22) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(kl_independence_psi(p, s33), Error);
}

TEST_CASE("property: psi vanishes on outer products and matches a brute-force sum") {
  std::mt19937_64 gen(71);
  std::exponential_distribution<double> expo(1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = 2 + trial % 4;
    const std::size_t c = 2 + (trial / 4) % 4;
    const ContingencyShape shape(r, c);
    std::vector<double> a(r), b(c);
    double sa = 0.0, sb = 0.0;
    for (double& v : a) sa += (v = expo(gen));
    for (double& v : b) sb += (v = expo(gen));
    std::vector<double> outer;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) outer.push_back(a[i] / sa * b[j] / sb);
    }
    REQUIRE(std::abs(kl_independence_psi(outer, shape)) <= 1e-13);

    std::vector<double> p(r * c);
    double total = 0.0;
    for (double& v : p) total += (v = expo(gen));
    for (double& v : p) v /= total;
    std::vector<std::vector<double>> nested(r, std::vector<double>(c));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) nested[i][j] = p[shape.index(i, j)];
    }
    const double psi = kl_independence_psi(p, shape);
    REQUIRE(psi >= 0.0);
    REQUIRE(psi == doctest::Approx(psi_brute(nested)).epsilon(1e-12));

    // Row and column permutations, and transposition, leave psi unchanged.
    std::vector<double> permuted(r * c);
    std::vector<double> transposed(r * c);
    const ContingencyShape tshape(c, r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        permuted[shape.index((i + 1) % r, c - 1 - j)] = p[shape.index(i, j)];
        transposed[tshape.index(j, i)] = p[shape.index(i, j)];
      }
    }
    REQUIRE(kl_independence_psi(permuted, shape) == doctest::Approx(psi).epsilon(1e-12));
    REQUIRE(kl_independence_psi(transposed, tshape) == doctest::Approx(psi).epsilon(1e-12));
  }
}

TEST_CASE("relative belief from bin counts") {
  const RBAnalysis a = RBAnalysis::from_counts(DiscretizationGrid(0.01, 2), {50, 50}, {25, 75});
  CHECK(a.prior_draws == 100);
  CHECK(a.posterior_draws == 100);
  CHECK(a.prior_content == std::vector<double>{0.5, 0.5});
  CHECK(a.posterior_content == std::vector<double>{0.25, 0.75});
  REQUIRE(a.rb[0]);
  REQUIRE(a.rb[1]);
  CHECK(*a.rb[0] == doctest::Approx(0.5));
  CHECK(*a.rb[1] == doctest::Approx(1.5));

  const HypothesisAssessment h = assess_hypothesis(a);
  CHECK(h.verdict == Verdict::EvidenceAgainst);
  CHECK(h.rb_at_h0 == doctest::Approx(0.5));
  CHECK(h.strength == doctest::Approx(0.25));
  CHECK(rb_estimate(a) == 1);

  const HypothesisAssessment h1 = assess_hypothesis(a, 1);
  CHECK(h1.verdict == Verdict::EvidenceInFavor);
  CHECK(h1.strength == 1.0);

  const RBAnalysis tied = RBAnalysis::from_counts(DiscretizationGrid(0.01, 3), {10, 10, 10},
                                                  {10, 10, 10});
  CHECK(assess_hypothesis(tied).verdict == Verdict::NoEvidence);
  CHECK(rb_estimate(tied) == 0);
}

TEST_CASE("zero prior content leaves RB undefined") {
  const RBAnalysis a = RBAnalysis::from_counts(DiscretizationGrid(0.01, 3), {0, 90, 10},
                                               {5, 80, 15});
  CHECK(!a.rb[0]);
  REQUIRE(a.rb[2]);
  try {
    assess_hypothesis(a, 0);
    FAIL("expected UndefinedRB");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedRB);
    CHECK(is_numerical(e.code()));
  }
  CHECK(rb_estimate(a) == 2);
  CHECK_THROWS_AS(assess_hypothesis(a, 3), Error);
  CHECK_THROWS_AS(RBAnalysis::from_counts(DiscretizationGrid(0.01, 2), {1}, {1, 2}), Error);
}

TEST_CASE("property: RB identity sum_i RB_i prior_i = 1") {
  std::mt19937_64 gen(72);
  std::uniform_int_distribution<int> cnt(1, 500);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t bins = 2 + trial % 10;
    std::vector<std::uint64_t> pc(bins), qc(bins);
    for (auto& v : pc) v = static_cast<std::uint64_t>(cnt(gen));
    for (auto& v : qc) v = static_cast<std::uint64_t>(cnt(gen));
    const RBAnalysis a = RBAnalysis::from_counts(DiscretizationGrid(0.01, bins), pc, qc);
    double total = 0.0;
    for (std::size_t i = 0; i < bins; ++i) total += *a.rb[i] * a.prior_content[i];
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
    const HypothesisAssessment h = assess_hypothesis(a);
    REQUIRE(h.strength >= 0.0);
    REQUIRE(h.strength <= 1.0);
    REQUIRE(h.strength >= a.posterior_content[0] - 1e-12);
    const std::size_t est = rb_estimate(a);
    for (std::size_t i = 0; i < bins; ++i) REQUIRE(*a.rb[est] >= *a.rb[i]);
  }
}

TEST_CASE("psi sampling and bin contents") {
  Rng rng(73);
  const ContingencyShape shape(3, 3);
  const DirichletParams d = DirichletParams::uniform(9);
  const auto psi = sample_psi(d, shape, 2000, rng);
  CHECK(psi.size() == 2000);
  for (double v : psi) REQUIRE(v >= 0.0);

  const DiscretizationGrid grid(0.05, 6);
  const auto counts = psi_bin_counts(d, shape, grid, 5000, rng);
  CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == 5000);
  const auto content = psi_bin_contents(d, shape, grid, 5000, rng);
  CHECK(std::accumulate(content.begin(), content.end(), 0.0) == doctest::Approx(1.0));

  // Concentrated near an outer product, psi sits in the first bin.
  std::vector<double> alpha(9);
  for (std::size_t i = 0; i < 9; ++i) alpha[i] = 1.0 + 1e5 / 9.0;
  const auto tight = psi_bin_contents(DirichletParams(alpha), shape, grid, 2000, rng);
  CHECK(tight[0] == 1.0);
}

TEST_CASE("RB analysis on the Example 1 data") {
  Rng rng(74);
  const ContingencyShape shape(3, 3);
  const CountVector f(kTable1);
  const RBAnalysis a =
      rb_analysis(DirichletParams::uniform(9), f, shape, 0.01, 20000, 5000, rng);
  CHECK(a.grid.delta() == 0.01);
  CHECK(a.prior_draws == 20000);
  CHECK(a.posterior_draws == 5000);
  CHECK(a.prior_counts.size() == a.grid.bins());
  CHECK(std::accumulate(a.posterior_content.begin(), a.posterior_content.end(), 0.0) ==
        doctest::Approx(1.0));
  // With n ~ 8800 the posterior of psi concentrates below delta.
  CHECK(a.posterior_content[0] > 0.99);
  const HypothesisAssessment h = assess_hypothesis(a);
  CHECK(h.verdict == Verdict::EvidenceInFavor);
  CHECK(rb_estimate(a) == 0);
  CHECK_THROWS_AS(rb_analysis(DirichletParams::uniform(9), CountVector({1, 2}), shape, 0.01,
                              10, 10, rng),
                  Error);
}

TEST_CASE("chi-squared test of independence") {
  const ContingencyShape s33(3, 3);
  const ChiSquaredResult t1 = chi_squared_independence(CountVector(kTable1), s33);
  CHECK(t1.statistic == doctest::Approx(40.5434).epsilon(1e-5));
  CHECK(t1.degrees_of_freedom == 4.0);
  CHECK(t1.p_value < 1e-7);

  const ContingencyShape s22(2, 2);
  const ChiSquaredResult t2 = chi_squared_independence(CountVector({10, 20, 20, 10}), s22);
  CHECK(t2.statistic == doctest::Approx(20.0 / 3.0).epsilon(1e-12));
  CHECK(t2.degrees_of_freedom == 1.0);

  const ChiSquaredResult t3 = chi_squared_independence(CountVector({2, 4, 6, 12}), s22);
  CHECK(t3.statistic == doctest::Approx(0.0));
  CHECK(t3.p_value == doctest::Approx(1.0));

  try {
    chi_squared_independence(CountVector({0, 0, 3, 4}), s22);
    FAIL("expected ZeroMargin");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroMargin);
  }
}

TEST_CASE("property: chi-squared statistic matches a brute-force sum") {
  std::mt19937_64 gen(75);
  std::uniform_int_distribution<int> cnt(1, 200);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 2 + trial % 3;
    const std::size_t c = 2 + (trial / 3) % 3;
    std::vector<std::int64_t> f(r * c);
    std::vector<std::vector<double>> nested(r, std::vector<double>(c));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        f[i * c + j] = cnt(gen);
        nested[i][j] = static_cast<double>(f[i * c + j]);
      }
    }
    const ChiSquaredResult res = chi_squared_independence(CountVector(f), ContingencyShape(r, c));
    REQUIRE(res.statistic == doctest::Approx(testing::chi_squared_brute(nested)).epsilon(1e-10));
    REQUIRE(res.degrees_of_freedom == static_cast<double>((r - 1) * (c - 1)));
  }
}
