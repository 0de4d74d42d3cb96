#pragma once

#include "allpay/metrics.hpp"

namespace allpay {

/// n bidders sharing one participation probability p.
struct UniformCase {
  int n = 2;
  double p = 1.0;

  /// Throws ValidationError unless n >= 2 and 0 < p <= 1.
  void validate() const;
  double lambda() const;
};

/// Bid of a participating bidder.
Moment uniform_bid_moments(const UniformCase& c);
/// Unconditional bidder profit (0 when absent).
Moment uniform_bidder_profit(const UniformCase& c);
/// Sum-profit auctioneer; the variance is n p^2 Var[bid].
Moment uniform_sum_profit(const UniformCase& c);
/// Max-profit auctioneer.
Moment uniform_max_profit(const UniformCase& c);

/// Variance of the sum of n independent "bid if present, else 0" terms:
/// n (p E[bid^2] - p^2 E[bid]^2). This is what a simulation measures; it
/// exceeds n p^2 Var[bid] whenever p < 1.
double uniform_sum_profit_variance_independent(const UniformCase& c);

/// All four closed forms together.
struct UniformReport {
  UniformCase input;
  double lambda = 0.0;
  Moment bid;
  Moment bidder_profit;
  Moment sum_profit;
  Moment max_profit;
};

UniformReport uniform_report(const UniformCase& c);

}  // namespace allpay
