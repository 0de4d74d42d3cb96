#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "allpay/errors.hpp"
#include "allpay/metrics.hpp"
#include "oracles/direct.hpp"
#include "oracles/quadrature.hpp"
#include "oracles/random_configs.hpp"

using namespace allpay;

namespace {

const std::vector<double> kExample{1.0 / 3, 0.5, 0.75, 1.0};

Equilibrium make(std::vector<double> p) { return Equilibrium(build_config(p)); }

// E[X] = integral of (1 - F) for a bid X >= 0.
double mean_from_cdf(const Equilibrium& eq, std::size_t i) {
  return oracle::integrate_pieces([&](double x) { return 1.0 - eq.cdf(i, x); }, eq.breakpoints());
}

double mean_from_pdf(const Equilibrium& eq, std::size_t i) {
  return oracle::integrate_pieces([&](double x) { return x * eq.pdf(i, x); }, eq.breakpoints());
}

double max_from_product(const Equilibrium& eq) {
  return oracle::integrate_pieces([&](double x) { return 1.0 - oracle::product_g(eq, x); },
                                  eq.breakpoints());
}

}  // namespace

TEST_CASE("reference auction exact values") {
  const auto eq = make(kExample);
  CHECK(expected_bid(eq, 0) == doctest::Approx(14.0 / 27).epsilon(1e-12));
  CHECK(sum_profit(eq) == doctest::Approx(113.0 / 144).epsilon(1e-12));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(expected_bid(eq, i) == doctest::Approx(mean_from_cdf(eq, i)).epsilon(1e-10));
  }
  CHECK(max_profit(eq) == doctest::Approx(max_from_product(eq)).epsilon(1e-10));
  CHECK(max_profit(eq) == doctest::Approx(0.4912720866810373).epsilon(1e-9));
}

TEST_CASE("expected bid, two bidders") {
  const auto eq = make({0.5, 1.0});
  CHECK(expected_bid(eq, 0) == doctest::Approx(0.25));
  CHECK(expected_bid(eq, 1) == doctest::Approx(0.125));
  CHECK_THROWS_AS(expected_bid(eq, 2), ValidationError);
}

TEST_CASE("sum profit") {
  CHECK(sum_profit(make({1.0, 1.0, 1.0})) == doctest::Approx(1.0));
  CHECK(sum_profit(make({0.5, 1.0})) == doctest::Approx(0.25));
}

TEST_CASE("winning bid cdf") {
  const auto eq = make(kExample);
  CHECK(winning_bid_cdf(eq, eq.top()) == doctest::Approx(1.0));
  CHECK(winning_bid_cdf(eq, 1.5) == 1.0);
  CHECK(winning_bid_cdf(eq, 0.5) == doctest::Approx(std::pow(7.0 / 12, 4.0 / 3)).epsilon(1e-12));
  CHECK(winning_bid_cdf(make({0.5, 1.0}), 0.0) == doctest::Approx(0.25));
}

TEST_CASE("max profit") {
  CHECK(max_profit(make({1.0, 1.0, 1.0, 1.0})) == doctest::Approx(4.0 / 7).epsilon(1e-12));
  CHECK(max_profit(make({0.5, 1.0})) == doctest::Approx(5.0 / 24).epsilon(1e-12));
}

TEST_CASE("sum profit identity on random configs") {
  std::mt19937_64 rng(21);
  for (int c = 0; c < 200; ++c) {
    const auto eq = make(oracle::random_probabilities(rng, oracle::random_size(rng, 2, 8)));
    double weighted = 0.0;
    for (std::size_t i = 0; i < eq.size(); ++i) weighted += eq.probability(i) * expected_bid(eq, i);
    CHECK(weighted == doctest::Approx(sum_profit(eq)).epsilon(1e-9));
  }
}

TEST_CASE("closed forms agree with quadrature") {
  std::mt19937_64 rng(22);
  for (int c = 0; c < 50; ++c) {
    const auto eq = make(oracle::random_probabilities(rng, oracle::random_size(rng, 2, 8)));
    for (std::size_t i = 0; i < eq.size(); ++i) {
      CHECK(std::abs(expected_bid(eq, i) - mean_from_pdf(eq, i)) <= 1e-6);
      CHECK(std::abs(expected_bid(eq, i) - mean_from_cdf(eq, i)) <= 1e-6);
    }
    CHECK(std::abs(max_profit(eq) - max_from_product(eq)) <= 1e-6);
    const double by_density = oracle::integrate_pieces(
        [&](double x) { return x * winning_bid_pdf(eq, x); }, eq.breakpoints());
    CHECK(std::abs(max_profit(eq) - by_density) <= 1e-6);
  }
}

TEST_CASE("winning bid cdf matches the product and is monotone") {
  std::mt19937_64 rng(23);
  for (int c = 0; c < 30; ++c) {
    const auto eq = make(oracle::random_probabilities(rng, oracle::random_size(rng, 2, 8)));
    double prev = -1.0;
    for (double x : oracle::linspace(0.0, eq.top(), 2000)) {
      const double g = winning_bid_cdf(eq, x);
      CHECK(g >= prev);
      CHECK(g == doctest::Approx(oracle::product_g(eq, x)).epsilon(1e-9));
      prev = g;
    }
    CHECK(winning_bid_cdf(eq, eq.top()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bidder n scales bidder n-1") {
  std::mt19937_64 rng(24);
  for (int c = 0; c < 50; ++c) {
    const auto eq = make(oracle::random_probabilities(rng, oracle::random_size(rng, 2, 8)));
    const std::size_t n = eq.size();
    CHECK(expected_bid(eq, n - 1) ==
          eq.probability(n - 2) / eq.probability(n - 1) * expected_bid(eq, n - 2));
  }
}

TEST_CASE("approach to the no-failure table") {
  for (int n = 2; n <= 8; ++n) {
    const auto eq = make(std::vector<double>(static_cast<std::size_t>(n), 1.0 - 1e-6));
    CHECK(std::abs(sum_profit(eq) - 1.0) <= 1e-4);
    CHECK(std::abs(max_profit(eq) - n / (2.0 * n - 1.0)) <= 1e-4);
  }
}

TEST_CASE("revenue report") {
  const auto eq = make(kExample);
  const auto r = revenue_report(eq);
  CHECK(r.lambda == eq.lambda());
  REQUIRE(r.expected_bid.size() == 4);
  CHECK(r.expected_utility[2] == doctest::Approx(0.0625));
  CHECK(r.sum_profit == sum_profit(eq));
  CHECK(r.max_profit == max_profit(eq));
}

TEST_CASE("no-failure baseline against the table") {
  const auto b2 = no_failure_baseline(2);
  CHECK(b2.bid.mean == doctest::Approx(0.5));
  CHECK(b2.bid.variance == doctest::Approx(1.0 / 12));
  CHECK(b2.max_profit.mean == doctest::Approx(2.0 / 3));
  CHECK(no_failure_baseline(4).max_profit.mean == doctest::Approx(4.0 / 7));
  CHECK_THROWS_AS(no_failure_baseline(1), ValidationError);
}

TEST_CASE("no-failure baseline against quadrature") {
  // With F(x) = x^{1/(n-1)}: win probability at bid x is x, the max bid has CDF x^{n/(n-1)}.
  for (int n = 2; n <= 10; ++n) {
    const auto eq = make(std::vector<double>(static_cast<std::size_t>(n), 1.0));
    const auto b = no_failure_baseline(n);
    const auto f = [&](double x) { return eq.pdf(0, x); };
    const double m1 = oracle::integrate([&](double x) { return x * f(x); }, 0.0, 1.0);
    const double m2 = oracle::integrate([&](double x) { return x * x * f(x); }, 0.0, 1.0);
    CHECK(b.bid.mean == doctest::Approx(m1).epsilon(1e-8));
    CHECK(b.bid.variance == doctest::Approx(m2 - m1 * m1).epsilon(1e-8));

    const double u2 = oracle::integrate(
        [&](double x) { return (x * (1 - x) * (1 - x) + (1 - x) * x * x) * f(x); }, 0.0, 1.0);
    CHECK(b.bidder_utility.mean == 0.0);
    CHECK(b.bidder_utility.variance == doctest::Approx(u2).epsilon(1e-8));

    CHECK(b.sum_profit.mean == doctest::Approx(n * m1).epsilon(1e-8));
    CHECK(b.sum_profit.variance == doctest::Approx(n * (m2 - m1 * m1)).epsilon(1e-8));

    const double g1 = oracle::integrate([&](double x) { return 1.0 - oracle::product_g(eq, x); }, 0.0, 1.0);
    const double g2 =
        oracle::integrate([&](double x) { return 2.0 * x * (1.0 - oracle::product_g(eq, x)); }, 0.0, 1.0);
    CHECK(b.max_profit.mean == doctest::Approx(g1).epsilon(1e-8));
    CHECK(b.max_profit.variance == doctest::Approx(g2 - g1 * g1).epsilon(1e-8));
    CHECK(max_profit(eq) == doctest::Approx(b.max_profit.mean).epsilon(1e-12));
  }
}
