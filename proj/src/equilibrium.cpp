#include "allpay/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "allpay/errors.hpp"

namespace allpay {

namespace {

// Breakpoint s_{n-1} vanishes algebraically; anything larger than this is a bug.
constexpr double kLastBreakpointSlack = 1e-12;

void require_nondegenerate(const AuctionConfig& config) {
  if (config.size() < 2) {
    throw ValidationError("degenerate auction: at least two potential participants are required");
  }
}

}  // namespace

std::vector<double> prefix_products(const AuctionConfig& config) {
  const std::size_t n = config.size();
  std::vector<double> prefix(n + 1, 1.0);
  // prefix[1] = 1 - p_0 = 1 for the dummy bidder; prefix[k+1] = prefix[k] (1 - p_k).
  for (std::size_t k = 1; k < n; ++k) {
    prefix[k + 1] = prefix[k] * (1.0 - config.probability(k - 1));
  }
  return prefix;
}

double lambda_value(const AuctionConfig& config) {
  return prefix_products(config).back();
}

std::vector<double> breakpoints(const AuctionConfig& config) {
  require_nondegenerate(config);
  const std::size_t n = config.size();
  const auto prefix = prefix_products(config);
  const double lambda = prefix[n];

  std::vector<double> s(n, 0.0);
  s[0] = 1.0 - lambda;
  for (std::size_t k = 1; k < n; ++k) {
    const double pk = config.probability(k - 1);
    double value = std::pow(1.0 - pk, static_cast<int>(n - k)) * prefix[k] - lambda;
    if (k >= 2 && pk == config.probability(k - 2)) {
      value = s[k - 1];
    }
    s[k] = std::clamp(value, 0.0, s[k - 1]);
  }
  const double last = std::pow(1.0 - config.probability(n - 2), 1) * prefix[n - 1] - lambda;
  if (std::abs(last) > kLastBreakpointSlack) {
    throw std::logic_error("last breakpoint is not zero: " + std::to_string(last));
  }
  s[n - 1] = 0.0;
  return s;
}

double h_value(const AuctionConfig& config, int k, double x) {
  const int n = static_cast<int>(config.size());
  if (k < 1 || k > n - 1) {
    throw ValidationError("piece index " + std::to_string(k) + " is outside 1.." +
                          std::to_string(n - 1));
  }
  const auto prefix = prefix_products(config);
  if (prefix[k] <= 0.0) {
    throw ValidationError("unused piece: prefix product for piece " + std::to_string(k) +
                          " is zero");
  }
  const double shifted = prefix[n] + x;
  if (shifted < 0.0) {
    throw ValidationError("h_value needs lambda + x >= 0");
  }
  return std::pow(shifted / prefix[k], 1.0 / (n - k));
}

double expected_utility(const AuctionConfig& config, std::size_t i) {
  return config.probability(i) * lambda_value(config);
}

// ---------------------------------------------------------------------------
// BidDistribution

BidDistribution::BidDistribution(std::size_t bidder, double probability, double lambda,
                                 double atom, std::vector<Piece> pieces)
    : bidder_(bidder), p_(probability), lambda_(lambda), atom_(atom), pieces_(std::move(pieces)) {}

double BidDistribution::support_upper() const {
  return pieces_.empty() ? 0.0 : pieces_.front().upper;
}

double BidDistribution::support_lower() const {
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
    if (!it->empty()) return it->lower;
  }
  return support_upper();
}

const Piece* BidDistribution::piece_at(double x) const {
  for (const Piece& piece : pieces_) {
    if (piece.empty()) continue;
    if (piece.lower <= x && x < piece.upper) return &piece;
  }
  return nullptr;
}

double BidDistribution::piece_cdf(const Piece& piece, double x) const {
  const double h = std::pow((lambda_ + x) / piece.prefix, 1.0 / piece.degree);
  return (h + p_ - 1.0) / p_;
}

double BidDistribution::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= support_upper()) return 1.0;
  const Piece* piece = piece_at(x);
  if (piece == nullptr) {
    // Below the continuous support. Only bidder n reaches 0 with an atom,
    // and its lowest piece already starts at 0.
    return 0.0;
  }
  return std::clamp(piece_cdf(*piece, x), 0.0, 1.0);
}

double BidDistribution::pdf(double x) const {
  if (x == 0.0 && atom_ > 0.0) {
    throw ValidationError("atom has no density");
  }
  const Piece* piece = piece_at(x);
  if (piece == nullptr) return 0.0;
  const double d = piece->degree;
  return std::pow((lambda_ + x) / piece->prefix, 1.0 / d - 1.0) / (d * piece->prefix * p_);
}

double BidDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ValidationError("quantile level must lie in [0, 1]");
  }
  if (atom_ > 0.0 && u <= atom_) return 0.0;
  if (u == 0.0) return support_lower();
  if (u == 1.0) return support_upper();

  const Piece* chosen = nullptr;
  for (const Piece& piece : pieces_) {
    if (piece.empty()) continue;
    chosen = &piece;
    if (u >= piece_cdf(piece, piece.lower)) break;
  }
  if (chosen == nullptr) return support_upper();
  const double h = p_ * u + 1.0 - p_;
  const double x = std::pow(h, chosen->degree) * chosen->prefix - lambda_;
  return std::clamp(x, chosen->lower, chosen->upper);
}

// ---------------------------------------------------------------------------
// Equilibrium

Equilibrium::Equilibrium(AuctionConfig config) : config_(std::move(config)) {
  require_nondegenerate(config_);
  const std::size_t n = config_.size();
  profile_.prefix_products = prefix_products(config_);
  profile_.lambda = profile_.prefix_products[n];
  profile_.breakpoints = allpay::breakpoints(config_);
  profile_.atom_n = 1.0 - config_.probability(n - 2) / config_.probability(n - 1);

  const auto& s = profile_.breakpoints;
  distributions_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t last_piece = std::min(i + 1, n - 1);
    std::vector<Piece> pieces;
    pieces.reserve(last_piece);
    for (std::size_t k = 1; k <= last_piece; ++k) {
      pieces.push_back(Piece{static_cast<int>(k), s[k], s[k - 1], profile_.prefix_products[k],
                             static_cast<int>(n - k)});
    }
    const double atom = (i == n - 1) ? profile_.atom_n : 0.0;
    distributions_.emplace_back(i, config_.probability(i), profile_.lambda, atom,
                                std::move(pieces));
  }
}

double Equilibrium::payoff(std::size_t i, double x) const {
  double win = 1.0;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j == i) continue;
    const double p = probability(j);
    win *= p * cdf(j, x) + 1.0 - p;
  }
  return win - x;
}

int Equilibrium::piece_at(double x) const {
  const auto& s = profile_.breakpoints;
  if (x < 0.0 || x >= s.front()) return 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const bool empty = !(s[k] < s[k - 1]) || profile_.prefix_products[k] <= 0.0;
    if (!empty && s[k] <= x) return static_cast<int>(k);
  }
  return 0;
}

}  // namespace allpay
