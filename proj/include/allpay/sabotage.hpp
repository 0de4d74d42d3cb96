#pragma once

#include <cstddef>
#include <vector>

#include "allpay/equilibrium.hpp"

namespace allpay {

/// Bidder `saboteur` secretly lowers bidder `target`'s participation
/// probability from the announced p_r to `true_target_probability`. Everyone
/// else keeps playing the announced equilibrium. Indices are 0-based sorted
/// positions.
struct SabotageScenario {
  std::size_t saboteur = 0;
  std::size_t target = 1;
  double true_target_probability = 0.0;

  void validate(const Equilibrium& eq) const;
  /// (p_r - p'_r) / p_r.
  double gain_factor(const Equilibrium& eq) const;
};

/// Saboteur's expected profit from bidding x in [0, s_0], by the direct
/// product over opponents' announced CDFs with p'_r substituted for bidder r.
double sabotaged_payoff(const Equilibrium& eq, const SabotageScenario& scenario, double x);

/// The same profit from the per-region closed forms: joint support of
/// saboteur and target, saboteur-only, target-only, neither.
double sabotaged_payoff_closed_form(const Equilibrium& eq, const SabotageScenario& scenario,
                                    double x);

enum class CandidateKind {
  kInterior,    // stationary point inside [s_k, s_{k-1}]
  kUpperEdge,   // s_{k-1}
  kLowerEdge,   // s_k
};

const char* to_string(CandidateKind kind);

struct SabotageCandidate {
  int k = 1;
  CandidateKind kind = CandidateKind::kInterior;
  double bid = 0.0;
  double profit = 0.0;
};

struct SabotagePlan {
  std::vector<SabotageCandidate> candidates;
  std::size_t chosen = 0;  // position in `candidates`
  double bid = 0.0;
  double expected_profit = 0.0;
};

/// Best bid over the pieces shared by saboteur and target. Profit ties
/// within 1e-12 go to the smaller bid.
SabotagePlan optimal_sabotage_bid(const Equilibrium& eq, const SabotageScenario& scenario);

}  // namespace allpay
