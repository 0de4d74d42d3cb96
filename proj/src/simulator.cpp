#include "allpay/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "allpay/errors.hpp"
#include "allpay/metrics.hpp"

namespace allpay {

SimulationModel::SimulationModel(AuctionConfig config) : config_(std::move(config)) {
  if (config_.size() >= 2) eq_.emplace(config_);
}

SimulationModel::SimulationModel(const Equilibrium& eq) : config_(eq.config()), eq_(eq) {}

AuctionOutcome settle_auction(const std::vector<bool>& participated, const std::vector<double>& bids) {
  const std::size_t n = participated.size();
  AuctionOutcome out;
  out.participated = participated;
  out.bids = bids;
  out.utilities.assign(n, 0.0);

  double top = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!participated[i]) {
      out.bids[i] = 0.0;
      continue;
    }
    out.sum_revenue += bids[i];
    if (bids[i] > top) {
      top = bids[i];
      out.winners.assign(1, i);
    } else if (bids[i] == top) {
      out.winners.push_back(i);
    }
  }
  if (out.winners.empty()) return out;

  out.max_revenue = top;
  const double share = 1.0 / static_cast<double>(out.winners.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (participated[i]) out.utilities[i] = -bids[i];
  }
  for (std::size_t w : out.winners) out.utilities[w] += share;
  return out;
}

// ---------------------------------------------------------------------------
// MomentAccumulator

void MomentAccumulator::add(double x) {
  const std::uint64_t prior = count_;
  ++count_;
  const double n = static_cast<double>(count_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term = delta * delta_n * static_cast<double>(prior);
  mean_ += delta_n;
  m4_ += term * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double d2 = delta * delta;

  const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + d2 * delta * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ +
                    d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * delta * (na * other.m3_ - nb * m3_) / n;

  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  count_ += other.count_;
}

double MomentAccumulator::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::mean_se() const {
  return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

double MomentAccumulator::variance_se() const {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  const double s2 = m2_ / n;
  const double fourth = m4_ / n;
  return std::sqrt(std::max(0.0, fourth - s2 * s2) / n);
}

Estimate to_estimate(const MomentAccumulator& acc) {
  return Estimate{acc.count(), acc.mean(), acc.variance(), acc.mean_se(), acc.variance_se()};
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

// Trials are cut into fixed blocks and blocks are merged in index order, so
// the thread count cannot change a single bit of the result.
constexpr std::uint64_t kBlockTrials = 4096;

struct BlockTotals {
  std::vector<MomentAccumulator> bid;
  std::vector<MomentAccumulator> utility;
  std::vector<MomentAccumulator> zero_bid;
  MomentAccumulator sum_revenue;
  MomentAccumulator max_revenue;

  explicit BlockTotals(std::size_t n) : bid(n), utility(n), zero_bid(n) {}

  void merge(const BlockTotals& other) {
    for (std::size_t i = 0; i < bid.size(); ++i) {
      bid[i].merge(other.bid[i]);
      utility[i].merge(other.utility[i]);
      zero_bid[i].merge(other.zero_bid[i]);
    }
    sum_revenue.merge(other.sum_revenue);
    max_revenue.merge(other.max_revenue);
  }
};

BlockTotals run_block(const SimulationModel& model, std::uint64_t seed, std::uint64_t first,
                      std::uint64_t last) {
  const std::size_t n = model.size();
  BlockTotals totals(n);
  for (std::uint64_t t = first; t < last; ++t) {
    TrialStream stream(seed, t);
    const AuctionOutcome out = run_auction(model, stream);
    for (std::size_t i = 0; i < n; ++i) {
      totals.utility[i].add(out.utilities[i]);
      if (out.participated[i]) {
        totals.bid[i].add(out.bids[i]);
        totals.zero_bid[i].add(out.bids[i] == 0.0 ? 1.0 : 0.0);
      }
    }
    totals.sum_revenue.add(out.sum_revenue);
    totals.max_revenue.add(out.max_revenue);
  }
  return totals;
}

}  // namespace

SimulationReport monte_carlo(const SimulationModel& model, const MonteCarloOptions& options) {
  if (options.trials == 0) {
    throw ValidationError("trials must be at least 1");
  }
  const std::size_t n = model.size();
  const std::uint64_t blocks = (options.trials + kBlockTrials - 1) / kBlockTrials;
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, blocks));

  std::vector<std::optional<BlockTotals>> results(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
      const std::uint64_t first = b * kBlockTrials;
      const std::uint64_t last = std::min(options.trials, first + kBlockTrials);
      results[b].emplace(run_block(model, options.seed, first, last));
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  BlockTotals total(n);
  for (const auto& block : results) total.merge(*block);

  SimulationReport report;
  report.trials = options.trials;
  report.seed = options.seed;
  report.user_order = model.config().user_order();
  report.raw_size = model.config().raw_size();
  for (std::size_t i = 0; i < n; ++i) {
    report.bidders.push_back(BidderStats{model.config().probability(i), to_estimate(total.bid[i]),
                                         to_estimate(total.utility[i]),
                                         to_estimate(total.zero_bid[i])});
  }
  report.sum_revenue = to_estimate(total.sum_revenue);
  report.max_revenue = to_estimate(total.max_revenue);
  return report;
}

std::vector<ComparisonRow> compare_with_closed_forms(const SimulationReport& report,
                                                     const SimulationModel& model) {
  const Equilibrium* eq = model.equilibrium();
  const std::size_t n = model.size();
  std::vector<ComparisonRow> rows;
  auto push = [&](std::string quantity, std::optional<std::size_t> sorted, const Estimate& est,
                  std::optional<double> analytic) {
    ComparisonRow row;
    row.quantity = std::move(quantity);
    if (sorted) row.bidder = report.user_order.at(*sorted);
    row.empirical = est.mean;
    row.standard_error = est.mean_se;
    row.analytic = analytic;
    if (analytic && est.mean_se > 0.0) row.z_score = (est.mean - *analytic) / est.mean_se;
    rows.push_back(std::move(row));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = report.bidders[i];
    push("utility", i, b.utility,
         eq ? std::optional<double>(eq->expected_utility(i))
            : std::optional<double>(model.config().probability(i)));
    push("bid", i, b.bid, eq ? std::optional<double>(expected_bid(*eq, i)) : std::optional<double>(0.0));
  }
  if (eq) {
    push("atom_at_zero", n - 1, report.bidders[n - 1].zero_bid, eq->atom_at_zero(n - 1));
    push("sum_revenue", std::nullopt, report.sum_revenue, sum_profit(*eq));
    push("max_revenue", std::nullopt, report.max_revenue, max_profit(*eq));
  } else {
    push("sum_revenue", std::nullopt, report.sum_revenue, 0.0);
    push("max_revenue", std::nullopt, report.max_revenue, 0.0);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Best-response audit

std::vector<double> audit_grid(const Equilibrium& eq, std::size_t grid_size) {
  if (grid_size < 2) {
    throw ValidationError("audit grid needs at least 2 points");
  }
  const double top = eq.top();
  std::vector<double> grid;
  grid.reserve(grid_size + eq.size());
  for (std::size_t g = 0; g < grid_size; ++g) {
    grid.push_back(top * static_cast<double>(g) / static_cast<double>(grid_size - 1));
  }
  grid.back() = top;
  grid.insert(grid.end(), eq.breakpoints().begin(), eq.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

AuditResult best_response_audit(const Equilibrium& eq, std::size_t i, std::size_t grid_size) {
  if (i >= eq.size()) {
    throw ValidationError("bidder index out of range");
  }
  return audit_profile(equilibrium_profile(eq), i, audit_grid(eq, grid_size), eq.lambda());
}

StrategyProfile equilibrium_profile(const Equilibrium& eq) {
  StrategyProfile profile;
  profile.probabilities = eq.config().probabilities();
  for (std::size_t j = 0; j < eq.size(); ++j) {
    const BidDistribution* dist = &eq.distribution(j);
    profile.cdfs.emplace_back([dist](double x) { return dist->cdf(x); });
  }
  return profile;
}

double profile_payoff(const StrategyProfile& profile, std::size_t i, double x) {
  double win = 1.0;
  for (std::size_t j = 0; j < profile.probabilities.size(); ++j) {
    if (j == i) continue;
    const double p = profile.probabilities[j];
    win *= p * profile.cdfs[j](x) + 1.0 - p;
  }
  return win - x;
}

AuditResult audit_profile(const StrategyProfile& profile, std::size_t i,
                          const std::vector<double>& grid, double reference_payoff) {
  if (grid.empty()) {
    throw ValidationError("audit grid is empty");
  }
  AuditResult result;
  result.bidder = i;
  result.reference_payoff = reference_payoff;
  result.max_payoff = -std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double value = profile_payoff(profile, i, x);
    if (value > result.max_payoff) {
      result.max_payoff = value;
      result.argmax_bid = x;
    }
  }
  result.deviation_gain = result.max_payoff - reference_payoff;
  return result;
}

double strategy_payoff(const StrategyProfile& profile, std::size_t i,
                       const std::function<double(double)>& quantile, std::size_t levels) {
  if (levels == 0) {
    throw ValidationError("strategy_payoff needs at least one level");
  }
  double acc = 0.0;
  for (std::size_t l = 0; l < levels; ++l) {
    const double u = (static_cast<double>(l) + 0.5) / static_cast<double>(levels);
    acc += profile_payoff(profile, i, quantile(u));
  }
  return acc / static_cast<double>(levels);
}

}  // namespace allpay
