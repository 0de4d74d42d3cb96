#pragma once

#include <cstddef>
#include <vector>

#include "allpay/config.hpp"
#include "allpay/equilibrium.hpp"

namespace allpay {

/// Expected bid of bidder i conditional on participating (0-based sorted
/// index). Bidder n's is p_{n-1}/p_n times bidder n-1's.
double expected_bid(const Equilibrium& eq, std::size_t i);

/// Expected revenue when the auctioneer keeps every bid:
/// 1 - lambda (1 + sum_{i<n} p_i).
double sum_profit(const Equilibrium& eq);

/// G(x) = prod_i (p_i F_i(x) + 1 - p_i): the CDF of the winning bid, with
/// "nobody showed up" counted as a winning bid of 0. Evaluated piecewise
/// as (lambda + x)^{(n-k+1)/(n-k)} / prefix_k^{1/(n-k)}.
double winning_bid_cdf(const Equilibrium& eq, double x);

/// Density of the winning bid on (0, s_0).
double winning_bid_pdf(const Equilibrium& eq, double x);

/// Expected revenue when the auctioneer keeps only the winning bid.
double max_profit(const Equilibrium& eq);

struct RevenueReport {
  double lambda = 0.0;
  std::vector<double> expected_bid;      // sorted order
  std::vector<double> expected_utility;  // sorted order, p_i * lambda
  double sum_profit = 0.0;
  double max_profit = 0.0;
};

RevenueReport revenue_report(const Equilibrium& eq);

/// Expectation and variance of one quantity.
struct Moment {
  double mean = 0.0;
  double variance = 0.0;
};

/// Closed forms of the auction in which nobody ever fails.
struct NoFailureBaseline {
  int n = 2;
  Moment bid;
  Moment bidder_utility;
  Moment sum_profit;
  Moment max_profit;
};

NoFailureBaseline no_failure_baseline(int n);

}  // namespace allpay
