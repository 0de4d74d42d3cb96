#include "allpay/uniform.hpp"

#include <cmath>
#include <string>

#include "allpay/errors.hpp"

namespace allpay {

void UniformCase::validate() const {
  if (n < 2) {
    throw ValidationError("uniform case needs n >= 2, got " + std::to_string(n));
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw ValidationError("uniform case needs 0 < p <= 1");
  }
}

double UniformCase::lambda() const { return std::pow(1.0 - p, n - 1); }

Moment uniform_bid_moments(const UniformCase& c) {
  c.validate();
  const double n = c.n;
  const double p = c.p;
  const double q = 1.0 - p;
  const double mean = (1.0 - c.lambda() * (1.0 + p * (n - 1.0))) / (n * p);
  const double head = 1.0 - std::pow(q, c.n);
  const double variance =
      (1.0 - std::pow(q, 2 * c.n - 1)) / ((2.0 * n - 1.0) * p) - head * head / (n * n * p * p);
  return {mean, variance};
}

Moment uniform_bidder_profit(const UniformCase& c) {
  c.validate();
  const double n = c.n;
  const double p = c.p;
  const double q = 1.0 - p;
  const double variance = (n - 1.0) / (n * (2.0 * n - 1.0)) - std::pow(q, c.n) / n +
                          (p + 1.0 / (2.0 * n - 1.0)) * std::pow(q, 2 * c.n - 1);
  return {p * c.lambda(), variance};
}

Moment uniform_sum_profit(const UniformCase& c) {
  const Moment bid = uniform_bid_moments(c);
  const double n = c.n;
  const double p = c.p;
  return {1.0 - c.lambda() * (1.0 + p * (n - 1.0)), n * p * p * bid.variance};
}

double uniform_sum_profit_variance_independent(const UniformCase& c) {
  const Moment bid = uniform_bid_moments(c);
  const double second = bid.variance + bid.mean * bid.mean;
  return c.n * (c.p * second - c.p * c.p * bid.mean * bid.mean);
}

Moment uniform_max_profit(const UniformCase& c) {
  c.validate();
  const double n = c.n;
  const double q = 1.0 - c.p;
  const double mean =
      n / (2.0 * n - 1.0) + (n - 1.0) / (2.0 * n - 1.0) * std::pow(q, 2 * c.n - 1) -
      std::pow(q, c.n - 1);
  const double second = std::pow(q, 2 * c.n - 2) - 2.0 * n * std::pow(q, c.n - 1) / (2.0 * n - 1.0) +
                        n / (3.0 * n - 2.0) -
                        2.0 * (n - 1.0) * (n - 1.0) * std::pow(q, 3 * c.n - 2) /
                            ((3.0 * n - 2.0) * (2.0 * n - 1.0));
  return {mean, second - mean * mean};
}

UniformReport uniform_report(const UniformCase& c) {
  c.validate();
  return UniformReport{c,
                       c.lambda(),
                       uniform_bid_moments(c),
                       uniform_bidder_profit(c),
                       uniform_sum_profit(c),
                       uniform_max_profit(c)};
}

}  // namespace allpay
