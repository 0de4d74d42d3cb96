#include "allpay/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

#include "allpay/errors.hpp"

namespace allpay {

AuctionConfig AuctionConfig::from_raw(std::span<const double> raw) {
  if (raw.empty()) {
    throw ValidationError("probability list is empty");
  }
  AuctionConfig config;
  config.raw_size_ = raw.size();
  std::vector<std::size_t> kept;
  for (std::size_t idx = 0; idx < raw.size(); ++idx) {
    const double p = raw[idx];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw ValidationError("probability at index " + std::to_string(idx + 1) +
                            " is outside [0, 1]");
    }
    if (p == 0.0) {
      config.dropped_.push_back(idx);
    } else {
      kept.push_back(idx);
    }
  }
  if (kept.empty()) {
    throw ValidationError("no potential participants");
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
  config.user_order_ = kept;
  config.probabilities_.reserve(kept.size());
  for (std::size_t idx : kept) {
    config.probabilities_.push_back(raw[idx]);
  }
  return config;
}

std::size_t AuctionConfig::sorted_index_of(std::size_t caller_index) const {
  const auto it = std::find(user_order_.begin(), user_order_.end(), caller_index);
  return it == user_order_.end() ? npos : static_cast<std::size_t>(it - user_order_.begin());
}

std::vector<double> AuctionConfig::to_caller_order(std::span<const double> sorted_values,
                                                   double fill) const {
  if (sorted_values.size() != size()) {
    throw ValidationError("per-bidder vector has the wrong length");
  }
  std::vector<double> out(raw_size_, fill);
  for (std::size_t k = 0; k < size(); ++k) {
    out[user_order_[k]] = sorted_values[k];
  }
  return out;
}

AuctionConfig build_config(std::span<const double> raw_probabilities) {
  return AuctionConfig::from_raw(raw_probabilities);
}

AuctionConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("probabilities") || !doc["probabilities"].is_array()) {
    throw ValidationError("config must be an object with a \"probabilities\" array");
  }
  std::vector<double> probs;
  for (const auto& v : doc["probabilities"]) {
    if (!v.is_number()) {
      throw ValidationError("probabilities must be numbers");
    }
    probs.push_back(v.get<double>());
  }
  return build_config(probs);
}

}  // namespace allpay
