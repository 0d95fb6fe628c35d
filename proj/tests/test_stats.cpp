#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "oracles.hpp"
#include "stats.hpp"
#include "test_support.hpp"

using namespace ecgkit;

TEST_CASE("mann-whitney on identical samples") {
  std::vector<double> a(30);
  for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i) * 0.1;
  const TestResult r = mann_whitney(a, a);
  CHECK(r.u == doctest::Approx(30.0 * 30.0 / 2.0));
  CHECK(std::fabs(r.statistic) < 1e-9);
  CHECK(r.p_value == doctest::Approx(1.0));
  CHECK_FALSE(r.significant);
}

TEST_CASE("mann-whitney small-sample exact p") {
  const std::vector<double> a = {1.0, 2.0};
  const std::vector<double> b = {3.0, 4.0};
  const TestResult r = mann_whitney(a, b);
  CHECK(r.exact);
  CHECK(r.u == doctest::Approx(0.0));
  CHECK(r.p_value == testsup::abs_approx(1.0 / 3.0, 1e-15));
}

TEST_CASE("exact branch equals full subset enumeration") {
  auto gen = testsup::rng(55);
  for (size_t n1 = 2; n1 <= 5; ++n1) {
    for (size_t n2 = 2; n2 <= 5; ++n2) {
      const std::vector<double> a = testsup::gaussian(n1, gen);
      const std::vector<double> b = testsup::gaussian(n2, gen);
      const TestResult r = mann_whitney(a, b);
      REQUIRE(r.exact);
      const double want = oracle::mann_whitney_exact_p_bruteforce(a, b);
      CHECK(r.p_value == want);  // identical integer tail / total
    }
  }
}

TEST_CASE("U statistics of the two orderings sum to n1*n2") {
  auto gen = testsup::rng(56);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n1 = 2 + static_cast<size_t>(trial % 17);
    const size_t n2 = 2 + static_cast<size_t>((trial * 7) % 23);
    const bool ties = trial % 3 == 0;
    const std::vector<double> a =
        ties ? testsup::tied_values(n1, gen) : testsup::gaussian(n1, gen);
    const std::vector<double> b =
        ties ? testsup::tied_values(n2, gen) : testsup::gaussian(n2, gen);
    const TestResult ra = mann_whitney(a, b);
    const TestResult rb = mann_whitney(b, a);
    CHECK(ra.u + rb.u == testsup::abs_approx(static_cast<double>(n1 * n2), 0));
  }
}

TEST_CASE("mann-whitney sign convention: higher first group gives negative z") {
  auto gen = testsup::rng(57);
  std::vector<double> high = testsup::gaussian(60, gen, 5.0, 1.0);
  std::vector<double> low = testsup::gaussian(60, gen, 0.0, 1.0);
  const TestResult r = mann_whitney(high, low);
  CHECK(r.statistic < -3.0);
  CHECK(r.p_value < 0.001);
  CHECK(r.significant);

  const TestResult flipped = mann_whitney(low, high);
  CHECK(flipped.statistic > 3.0);
}

TEST_CASE("mann-whitney p is invariant under monotone transforms") {
  auto gen = testsup::rng(58);
  const std::vector<double> a = testsup::gaussian(40, gen, 0.3);
  const std::vector<double> b = testsup::gaussian(35, gen);
  const TestResult base = mann_whitney(a, b);

  auto warp = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = std::atan(v[i]) * 3.0 + 1.0;
    return out;
  };
  const TestResult warped = mann_whitney(warp(a), warp(b));
  CHECK(warped.u == base.u);
  CHECK(warped.statistic == base.statistic);
  CHECK(warped.p_value == base.p_value);
}

TEST_CASE("exact and normal branches agree for moderate samples") {
  auto gen = testsup::rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> a = testsup::gaussian(25, gen, trial % 2 ? 0.4 : 0.0);
    const std::vector<double> b = testsup::gaussian(25, gen);
    const TestResult exact = mann_whitney(a, b, 0.001, MwMethod::exact);
    const TestResult normal = mann_whitney(a, b, 0.001, MwMethod::normal);
    CHECK(std::fabs(exact.p_value - normal.p_value) < 0.01);
  }
}

TEST_CASE("mann-whitney rejects empty samples") {
  const std::vector<double> a = {1.0};
  const std::vector<double> none;
  CHECK_THROWS_AS(mann_whitney(a, none), Error);
}

TEST_CASE("kruskal-wallis on identical groups") {
  auto gen = testsup::rng(60);
  const std::vector<double> g = testsup::gaussian(50, gen);
  const TestResult r = kruskal_wallis({g, g, g});
  CHECK(r.statistic < 1e-9);
  CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("kruskal-wallis with two groups equals z squared") {
  auto gen = testsup::rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<double> a = testsup::gaussian(15 + trial % 20, gen, 0.2);
    const std::vector<double> b = testsup::gaussian(12 + (trial * 3) % 25, gen);
    const TestResult kw = kruskal_wallis({a, b});
    const TestResult mw =
        mann_whitney(a, b, 0.001, MwMethod::normal, /*continuity=*/false);
    CHECK(kw.statistic ==
          testsup::abs_approx(mw.statistic * mw.statistic, 1e-6));
  }
}

TEST_CASE("kruskal-wallis matches the direct-formula oracle with ties") {
  auto gen = testsup::rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<std::vector<double>> groups = {
        testsup::tied_values(20, gen), testsup::tied_values(25, gen),
        testsup::tied_values(15, gen)};
    bool all_tied = true;
    for (const auto& g : groups)
      for (double v : g) all_tied &= v == groups[0][0];
    if (all_tied) continue;
    const TestResult r = kruskal_wallis(groups);
    CHECK(r.statistic ==
          testsup::abs_approx(oracle::kruskal_wallis_h(groups), 1e-12));
    CHECK(r.statistic >= 0.0);
  }
}

TEST_CASE("kruskal-wallis is zero when every observation ties") {
  const std::vector<double> g(10, 4.0);
  const TestResult r = kruskal_wallis({g, g});
  CHECK(r.statistic == 0.0);
}

TEST_CASE("kruskal-wallis needs at least two groups") {
  CHECK_THROWS_AS(kruskal_wallis({{1.0, 2.0}}), Error);
}

TEST_CASE("separated groups are significant at the study alpha") {
  auto gen = testsup::rng(63);
  const std::vector<double> a = testsup::gaussian(500, gen, 1.0);
  const std::vector<double> b = testsup::gaussian(500, gen, 0.0);
  const TestResult mw = mann_whitney(a, b, 0.001);
  CHECK(mw.significant);
  const TestResult kw = kruskal_wallis({a, b}, 0.001);
  CHECK(kw.significant);
}
