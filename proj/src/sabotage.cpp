#include "allpay/sabotage.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "allpay/errors.hpp"

namespace allpay {

namespace {

constexpr double kProfitTie = 1e-12;

// p_k with the dummy p_0 = 0.
double prob(const Equilibrium& eq, int k) {
  return k == 0 ? 0.0 : eq.probability(static_cast<std::size_t>(k - 1));
}

bool piece_empty(const Equilibrium& eq, int k) {
  const auto& s = eq.breakpoints();
  return !(s[k] < s[k - 1]) || eq.profile().prefix_products[k] <= 0.0;
}

}  // namespace

void SabotageScenario::validate(const Equilibrium& eq) const {
  if (saboteur >= eq.size() || target >= eq.size()) {
    throw ValidationError("sabotage indices out of range");
  }
  if (saboteur == target) {
    throw ValidationError("saboteur and target must differ");
  }
  const double announced = eq.probability(target);
  if (!(true_target_probability >= 0.0)) {
    throw ValidationError("true target probability must be >= 0");
  }
  if (!(true_target_probability < announced)) {
    throw ValidationError("true target probability must be strictly below the announced " +
                          std::to_string(announced));
  }
}

double SabotageScenario::gain_factor(const Equilibrium& eq) const {
  const double announced = eq.probability(target);
  return (announced - true_target_probability) / announced;
}

double sabotaged_payoff(const Equilibrium& eq, const SabotageScenario& scenario, double x) {
  scenario.validate(eq);
  if (!(x >= 0.0 && x <= eq.top())) {
    throw ValidationError("bid must lie in [0, s_0]");
  }
  double win = 1.0;
  for (std::size_t j = 0; j < eq.size(); ++j) {
    if (j == scenario.saboteur) continue;
    const double p = j == scenario.target ? scenario.true_target_probability : eq.probability(j);
    win *= p * eq.cdf(j, x) + 1.0 - p;
  }
  return win - x;
}

double sabotaged_payoff_closed_form(const Equilibrium& eq, const SabotageScenario& scenario,
                                    double x) {
  scenario.validate(eq);
  if (!(x >= 0.0 && x <= eq.top())) {
    throw ValidationError("bid must lie in [0, s_0]");
  }
  const int n = static_cast<int>(eq.size());
  const int mi = static_cast<int>(scenario.saboteur) + 1;
  const int mr = static_cast<int>(scenario.target) + 1;
  const int k = x >= eq.top() ? 1 : eq.piece_at(x);
  const double lambda = eq.lambda();
  const double y = lambda + x;
  const double prefix = eq.profile().prefix_products[k];
  const int m = n - k;
  const double h = std::pow(y / prefix, 1.0 / m);
  const double pi = eq.probability(scenario.saboteur);
  const double pr = eq.probability(scenario.target);
  const double pr_true = scenario.true_target_probability;

  if (k <= std::min(mi, mr)) {
    // Both supported: c * y * ((prefix / y)^{1/m} - 1) + lambda, written so
    // that y = 0 stays finite.
    const double c = scenario.gain_factor(eq);
    return c * (std::pow(prefix, 1.0 / m) * std::pow(y, (m - 1.0) / m) - y) + lambda;
  }
  if (k <= mi) {
    // Saboteur supported, target already below its support.
    return (pr - pr_true) / (1.0 - pr) * y + lambda;
  }
  if (k <= mr) {
    // Target supported, saboteur below its own support.
    const double ratio = pr_true / pr;
    return y / (1.0 - pi) * (ratio * h - ratio + pi) + lambda;
  }
  return y * ((1.0 - pr_true) / ((1.0 - pi) * (1.0 - pr)) * h - 1.0) + lambda;
}

const char* to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::kInterior:
      return "interior";
    case CandidateKind::kUpperEdge:
      return "upper_edge";
    case CandidateKind::kLowerEdge:
      return "lower_edge";
  }
  return "unknown";
}

SabotagePlan optimal_sabotage_bid(const Equilibrium& eq, const SabotageScenario& scenario) {
  scenario.validate(eq);
  const int n = static_cast<int>(eq.size());
  const int last = static_cast<int>(std::min(scenario.saboteur, scenario.target)) + 1;
  const double lambda = eq.lambda();
  const double c = scenario.gain_factor(eq);
  const auto& s = eq.breakpoints();

  SabotagePlan plan;
  for (int k = 1; k <= last; ++k) {
    if (piece_empty(eq, k)) continue;
    const int m = n - k;
    const double t = 1.0 / m;
    const double prefix = eq.profile().prefix_products[k];
    const double lo_p = prob(eq, k - 1);
    const double hi_p = prob(eq, k);

    SabotageCandidate cand;
    cand.k = k;
    if (lo_p <= t && t <= hi_p) {
      cand.kind = CandidateKind::kInterior;
      cand.bid = std::pow(1.0 - t, m) * prefix - lambda;
      cand.profit = t * std::pow(1.0 - t, m - 1) * prefix * c + lambda;
    } else if (t < lo_p) {
      cand.kind = CandidateKind::kUpperEdge;
      cand.bid = s[k - 1];
      cand.profit = lo_p * std::pow(1.0 - lo_p, m - 1) * prefix * c + lambda;
    } else {
      cand.kind = CandidateKind::kLowerEdge;
      cand.bid = s[k];
      cand.profit = hi_p * std::pow(1.0 - hi_p, m - 1) * prefix * c + lambda;
    }
    cand.bid = std::clamp(cand.bid, s[k], s[k - 1]);
    plan.candidates.push_back(cand);
  }
  if (plan.candidates.empty()) {
    throw std::logic_error("no nonempty piece shared by saboteur and target");
  }

  std::size_t best = 0;
  for (std::size_t idx = 1; idx < plan.candidates.size(); ++idx) {
    const auto& cand = plan.candidates[idx];
    const auto& incumbent = plan.candidates[best];
    if (cand.profit > incumbent.profit + kProfitTie) {
      best = idx;
    } else if (std::abs(cand.profit - incumbent.profit) <= kProfitTie && cand.bid < incumbent.bid) {
      best = idx;
    }
  }
  plan.chosen = best;
  plan.bid = plan.candidates[best].bid;
  plan.expected_profit = plan.candidates[best].profit;
  return plan;
}

}  // namespace allpay
