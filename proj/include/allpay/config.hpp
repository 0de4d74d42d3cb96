#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace allpay {

/// Participation probabilities of the bidders that can actually show up,
/// sorted ascending. Bidders with probability 0 are removed up front; they
/// never affect the equilibrium and are reported back with zero utility.
///
/// Sorted positions are 0-based throughout the library. `user_order()[k]`
/// is the caller's original (0-based) index of the bidder at sorted
/// position k.
class AuctionConfig {
 public:
  static AuctionConfig from_raw(std::span<const double> raw_probabilities);

  std::size_t size() const { return probabilities_.size(); }
  std::size_t raw_size() const { return raw_size_; }

  double probability(std::size_t sorted_index) const { return probabilities_.at(sorted_index); }
  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<std::size_t>& user_order() const { return user_order_; }
  const std::vector<std::size_t>& dropped() const { return dropped_; }

  /// Sorted position of the caller's bidder, or npos if that bidder was dropped.
  std::size_t sorted_index_of(std::size_t caller_index) const;

  /// Scatters a per-bidder vector in sorted order into caller order.
  /// Dropped bidders receive `fill`.
  std::vector<double> to_caller_order(std::span<const double> sorted_values, double fill = 0.0) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  AuctionConfig() = default;

  std::vector<double> probabilities_;
  std::vector<std::size_t> user_order_;
  std::vector<std::size_t> dropped_;
  std::size_t raw_size_ = 0;
};

AuctionConfig build_config(std::span<const double> raw_probabilities);

/// Parses {"probabilities": [...]}.
AuctionConfig config_from_json(const std::string& text);

}  // namespace allpay
