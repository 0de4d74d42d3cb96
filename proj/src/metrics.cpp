#include "allpay/metrics.hpp"

#include <cmath>

#include "allpay/errors.hpp"

namespace allpay {

namespace {

// prod_{j=1}^{k} (1 - p_j), i.e. prefix_{k+1}.
double through(const Equilibrium& eq, std::size_t k) {
  return eq.profile().prefix_products[k + 1];
}

// p_k with the dummy p_0 = 0, k in 0..n.
double prob(const Equilibrium& eq, std::size_t k) {
  return k == 0 ? 0.0 : eq.probability(k - 1);
}

double expected_bid_below_n(const Equilibrium& eq, std::size_t m) {
  // m is the 1-based bidder number, 1 <= m <= n-1.
  const std::size_t n = eq.size();
  double acc = 1.0 / static_cast<double>(n);
  for (std::size_t k = 1; k <= m; ++k) {
    const double nk = static_cast<double>(n - k);
    acc += std::pow(1.0 - prob(eq, k), static_cast<int>(n - k)) * through(eq, k) /
           (nk * (nk + 1.0));
  }
  acc -= std::pow(1.0 - prob(eq, m), static_cast<int>(n - m)) * through(eq, m) /
         static_cast<double>(n - m);
  acc -= prob(eq, m) * eq.lambda();
  return acc / prob(eq, m);
}

}  // namespace

double expected_bid(const Equilibrium& eq, std::size_t i) {
  const std::size_t n = eq.size();
  if (i >= n) {
    throw ValidationError("bidder index out of range");
  }
  if (i + 1 < n) {
    return expected_bid_below_n(eq, i + 1);
  }
  return prob(eq, n - 1) / prob(eq, n) * expected_bid_below_n(eq, n - 1);
}

double sum_profit(const Equilibrium& eq) {
  double partial = 0.0;
  for (std::size_t k = 0; k + 1 < eq.size(); ++k) {
    partial += eq.probability(k);
  }
  return 1.0 - eq.lambda() * (1.0 + partial);
}

double winning_bid_cdf(const Equilibrium& eq, double x) {
  if (x < 0.0) return 0.0;
  if (x >= eq.top()) return 1.0;
  const int k = eq.piece_at(x);
  const double degree = static_cast<double>(eq.size()) - k;
  const double prefix = eq.profile().prefix_products[k];
  return std::pow(eq.lambda() + x, (degree + 1.0) / degree) / std::pow(prefix, 1.0 / degree);
}

double winning_bid_pdf(const Equilibrium& eq, double x) {
  if (x <= 0.0 || x >= eq.top()) return 0.0;
  const int k = eq.piece_at(x);
  const double degree = static_cast<double>(eq.size()) - k;
  const double prefix = eq.profile().prefix_products[k];
  return (degree + 1.0) / degree * std::pow(eq.lambda() + x, 1.0 / degree) /
         std::pow(prefix, 1.0 / degree);
}

double max_profit(const Equilibrium& eq) {
  const std::size_t n = eq.size();
  const double nd = static_cast<double>(n);
  double acc = nd / (2.0 * nd - 1.0) - eq.lambda();
  for (std::size_t k = 1; k < n; ++k) {
    const double nk = static_cast<double>(n - k);
    const double head = through(eq, k);
    acc += std::pow(1.0 - prob(eq, k), static_cast<int>(2 * (n - k) - 1)) * head * head /
           (4.0 * nk * nk - 1.0);
  }
  return acc;
}

RevenueReport revenue_report(const Equilibrium& eq) {
  RevenueReport report;
  report.lambda = eq.lambda();
  for (std::size_t i = 0; i < eq.size(); ++i) {
    report.expected_bid.push_back(expected_bid(eq, i));
    report.expected_utility.push_back(eq.expected_utility(i));
  }
  report.sum_profit = sum_profit(eq);
  report.max_profit = max_profit(eq);
  return report;
}

NoFailureBaseline no_failure_baseline(int n) {
  if (n < 2) {
    throw ValidationError("degenerate auction: the baseline needs n >= 2");
  }
  const double nd = n;
  NoFailureBaseline b;
  b.n = n;
  b.bid = {1.0 / nd, 1.0 / (2.0 * nd - 1.0) - 1.0 / (nd * nd)};
  b.bidder_utility = {0.0, (nd - 1.0) / (nd * (2.0 * nd - 1.0))};
  b.sum_profit = {1.0, nd / (2.0 * nd - 1.0) - 1.0 / nd};
  b.max_profit = {nd / (2.0 * nd - 1.0),
                  nd * (nd - 1.0) * (nd - 1.0) /
                      ((3.0 * nd - 2.0) * (2.0 * nd - 1.0) * (2.0 * nd - 1.0))};
  return b;
}

}  // namespace allpay
