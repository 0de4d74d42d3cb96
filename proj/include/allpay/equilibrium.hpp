#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "allpay/config.hpp"

namespace allpay {

// Notation: n bidders with sorted probabilities p_1 <= ... <= p_n and a
// dummy p_0 = 0. Bidders are addressed by 0-based sorted position in code;
// piece numbers k = 1..n-1 keep their mathematical labels because they show
// up as exponents (1 / (n - k)).

/// prod_{j=1}^{n-1} (1 - p_j): the equilibrium profit of a participating
/// bidder. Empty product (n = 1) is 1.
double lambda_value(const AuctionConfig& config);

/// Entry k is prod_{j=0}^{k-1} (1 - p_j), k = 0..n. Entries 0 and 1 are 1;
/// entry n equals lambda.
std::vector<double> prefix_products(const AuctionConfig& config);

/// s_0 >= s_1 >= ... >= s_{n-1} = 0 with s_0 = 1 - lambda and
/// s_k = (1 - p_k)^{n-k} prod_{j<k} (1 - p_j) - lambda. Requires n >= 2.
std::vector<double> breakpoints(const AuctionConfig& config);

/// H_k(x) = ((lambda + x) / prod_{j<k} (1 - p_j))^{1/(n-k)} for 1 <= k <= n-1.
double h_value(const AuctionConfig& config, int k, double x);

/// p_i * lambda; 0-based sorted index. Valid for n = 1 too.
double expected_utility(const AuctionConfig& config, std::size_t i);

struct EquilibriumProfile {
  double lambda = 1.0;
  std::vector<double> breakpoints;
  std::vector<double> prefix_products;
  double atom_n = 0.0;
};

/// One closed-form CDF piece on [lower, upper). `prefix` is
/// prod_{j<k} (1 - p_j); a zero prefix marks a piece the formula never uses.
struct Piece {
  int k = 1;
  double lower = 0.0;
  double upper = 0.0;
  double prefix = 1.0;
  int degree = 1;  // n - k

  bool empty() const { return !(lower < upper) || prefix <= 0.0; }
};

/// Equilibrium bid distribution of a single bidder.
class BidDistribution {
 public:
  BidDistribution(std::size_t bidder, double probability, double lambda, double atom,
                  std::vector<Piece> pieces);

  std::size_t bidder() const { return bidder_; }
  double probability() const { return p_; }
  double atom_at_zero() const { return atom_; }
  std::span<const Piece> pieces() const { return pieces_; }

  double support_lower() const;
  double support_upper() const;

  /// Right-continuous CDF, total over the reals.
  double cdf(double x) const;
  /// Density of the continuous part. Throws at the atom.
  double pdf(double x) const;
  /// Inverse CDF; returns 0 for u inside the atom.
  double quantile(double u) const;

  /// The piece containing x, or nullptr outside the continuous support.
  const Piece* piece_at(double x) const;

 private:
  double piece_cdf(const Piece& piece, double x) const;

  std::size_t bidder_;
  double p_;
  double lambda_;
  double atom_;
  std::vector<Piece> pieces_;
};

/// The symmetric equilibrium with zero atoms for everyone but bidder n.
/// Immutable once built; every query is const and thread-safe.
class Equilibrium {
 public:
  /// Requires n >= 2; single-bidder auctions are only simulated.
  explicit Equilibrium(AuctionConfig config);

  const AuctionConfig& config() const { return config_; }
  std::size_t size() const { return config_.size(); }
  double probability(std::size_t i) const { return config_.probability(i); }

  const EquilibriumProfile& profile() const { return profile_; }
  double lambda() const { return profile_.lambda; }
  const std::vector<double>& breakpoints() const { return profile_.breakpoints; }
  /// s_0 = 1 - lambda, the top of every support.
  double top() const { return profile_.breakpoints.front(); }

  const BidDistribution& distribution(std::size_t i) const { return distributions_.at(i); }

  double cdf(std::size_t i, double x) const { return distribution(i).cdf(x); }
  double pdf(std::size_t i, double x) const { return distribution(i).pdf(x); }
  double quantile(std::size_t i, double u) const { return distribution(i).quantile(u); }
  double atom_at_zero(std::size_t i) const { return distribution(i).atom_at_zero(); }
  double expected_utility(std::size_t i) const { return probability(i) * lambda(); }

  /// pi_i(x) = prod_{j != i} (p_j F_j(x) + 1 - p_j) - x. Ties at x are
  /// counted as wins, i.e. the right limit of the tie-split payoff.
  double payoff(std::size_t i, double x) const;

  /// Smallest nonempty piece k with s_k <= x, 0 when x >= s_0 or x < 0.
  int piece_at(double x) const;

 private:
  AuctionConfig config_;
  EquilibriumProfile profile_;
  std::vector<BidDistribution> distributions_;
};

}  // namespace allpay
