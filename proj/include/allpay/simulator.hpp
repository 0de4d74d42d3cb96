#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "allpay/config.hpp"
#include "allpay/equilibrium.hpp"
#include "allpay/rng.hpp"

namespace allpay {

/// What a simulation needs to draw bids. A single-bidder auction has no
/// equilibrium object: the lone bidder bids 0 and wins whenever present.
class SimulationModel {
 public:
  explicit SimulationModel(AuctionConfig config);
  explicit SimulationModel(const Equilibrium& eq);

  const AuctionConfig& config() const { return config_; }
  std::size_t size() const { return config_.size(); }
  const Equilibrium* equilibrium() const { return eq_ ? &*eq_ : nullptr; }

  double bid(std::size_t i, double u) const { return eq_ ? eq_->quantile(i, u) : 0.0; }

 private:
  AuctionConfig config_;
  std::optional<Equilibrium> eq_;
};

/// One realised auction; all vectors in sorted bidder order.
struct AuctionOutcome {
  std::vector<bool> participated;
  std::vector<double> bids;  // 0 for absentees
  std::vector<std::size_t> winners;
  std::vector<double> utilities;
  double sum_revenue = 0.0;
  double max_revenue = 0.0;
};

/// Settles an auction: winners split the unit item, everyone present pays
/// their bid, absentees get 0.
AuctionOutcome settle_auction(const std::vector<bool>& participated, const std::vector<double>& bids);

/// Draws participation flags for bidders in sorted order (u < p_i means
/// present), then one bid level per participant in the same order.
template <UniformSource Source>
AuctionOutcome run_auction(const SimulationModel& model, Source& source) {
  const std::size_t n = model.size();
  std::vector<bool> participated(n, false);
  std::vector<double> bids(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    participated[i] = source.next_uniform() < model.config().probability(i);
  }
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (participated[i]) bids[i] = model.bid(i, source.next_uniform());
    }
  }
  return settle_auction(participated, bids);
}

/// Streaming moments up to order four with exact pairwise merging.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance.
  double variance() const;
  /// Standard error of the mean.
  double mean_se() const;
  /// Large-sample standard error of the sample variance.
  double variance_se() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

struct Estimate {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
};

Estimate to_estimate(const MomentAccumulator& acc);

struct BidderStats {
  double probability = 0.0;
  Estimate bid;       // over trials where the bidder showed up
  Estimate utility;   // over all trials
  Estimate zero_bid;  // share of exact-zero bids among participants
};

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> user_order;  // sorted position -> caller index
  std::size_t raw_size = 0;
  std::vector<BidderStats> bidders;     // sorted order
  Estimate sum_revenue;
  Estimate max_revenue;
};

struct MonteCarloOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  /// 0 means hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

SimulationReport monte_carlo(const SimulationModel& model, const MonteCarloOptions& options);

/// Empirical value next to its closed form, with z = (empirical - analytic) / se.
struct ComparisonRow {
  std::string quantity;
  std::optional<std::size_t> bidder;  // caller index
  double empirical = 0.0;
  double standard_error = 0.0;
  std::optional<double> analytic;
  std::optional<double> z_score;
};

/// Pairs the report with expected utility, expected bid, bidder-n atom,
/// and both revenue models. Analytic values are absent for n = 1.
std::vector<ComparisonRow> compare_with_closed_forms(const SimulationReport& report,
                                                     const SimulationModel& model);

// ---------------------------------------------------------------------------
// Best-response audit

struct AuditResult {
  std::size_t bidder = 0;
  double max_payoff = 0.0;
  double argmax_bid = 0.0;
  double reference_payoff = 0.0;
  double deviation_gain = 0.0;  // max_payoff - reference_payoff
};

/// Evenly spaced points on [0, s_0] (grid_size >= 2) merged with every breakpoint.
std::vector<double> audit_grid(const Equilibrium& eq, std::size_t grid_size);

/// Best pure deviation of bidder i against the equilibrium, measured against lambda.
AuditResult best_response_audit(const Equilibrium& eq, std::size_t i, std::size_t grid_size);

/// Arbitrary mixed profile: the audit's negative controls corrupt one CDF.
struct StrategyProfile {
  std::vector<double> probabilities;
  std::vector<std::function<double(double)>> cdfs;
};

StrategyProfile equilibrium_profile(const Equilibrium& eq);

/// prod_{j != i} (p_j F_j(x) + 1 - p_j) - x.
double profile_payoff(const StrategyProfile& profile, std::size_t i, double x);

/// Max of profile_payoff over the grid minus `reference_payoff`.
AuditResult audit_profile(const StrategyProfile& profile, std::size_t i,
                          const std::vector<double>& grid, double reference_payoff);

/// Expected payoff of bidder i when it plays `quantile` against the profile,
/// by the midpoint rule over `levels` probability levels.
double strategy_payoff(const StrategyProfile& profile, std::size_t i,
                       const std::function<double(double)>& quantile, std::size_t levels);

}  // namespace allpay
