#include <limits>
#include <string>
#include <vector>

#include "doctest.h"

#include "allpay/config.hpp"
#include "allpay/errors.hpp"

using allpay::AuctionConfig;
using allpay::build_config;
using allpay::ValidationError;

namespace {

AuctionConfig make(std::vector<double> p) { return build_config(p); }

std::string message_of(const std::vector<double>& p) {
  try {
    build_config(p);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("sorted input passes through unchanged") {
  const auto c = make({1.0 / 3, 0.5, 0.75, 1.0});
  CHECK(c.size() == 4);
  CHECK(c.probabilities() == std::vector<double>{1.0 / 3, 0.5, 0.75, 1.0});
  CHECK(c.user_order() == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(c.dropped().empty());
}

TEST_CASE("unsorted input keeps the permutation") {
  const auto c = make({1.0, 0.2});
  CHECK(c.probabilities() == std::vector<double>{0.2, 1.0});
  CHECK(c.user_order() == std::vector<std::size_t>{1, 0});
  CHECK(c.sorted_index_of(0) == 1);
  CHECK(c.sorted_index_of(1) == 0);
}

TEST_CASE("zero probabilities are dropped and recorded") {
  const auto c = make({0.0, 0.5, 0.5});
  CHECK(c.size() == 2);
  CHECK(c.raw_size() == 3);
  CHECK(c.dropped() == std::vector<std::size_t>{0});
  CHECK(c.probabilities() == std::vector<double>{0.5, 0.5});
  CHECK(c.sorted_index_of(0) == AuctionConfig::npos);

  const std::vector<double> sorted{7.0, 8.0};
  CHECK(c.to_caller_order(sorted, -1.0) == std::vector<double>{-1.0, 7.0, 8.0});
}

TEST_CASE("equal probabilities keep caller order") {
  const auto c = make({0.4, 0.9, 0.4});
  CHECK(c.user_order() == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("validation errors") {
  CHECK(message_of({0.5, 1.5}).find("index 2") != std::string::npos);
  CHECK(message_of({-0.1}).find("index 1") != std::string::npos);
  CHECK(message_of({0.5, std::numeric_limits<double>::quiet_NaN()}).find("index 2") != std::string::npos);
  CHECK(message_of({0.0, 0.0}) == "no potential participants");
  CHECK_THROWS_AS(make({}), ValidationError);
  const auto c = make({0.5, 1.0});
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(c.to_caller_order(wrong), ValidationError);
}

TEST_CASE("json config") {
  const auto c = allpay::config_from_json(R"({"probabilities": [0.75, 0.25]})");
  CHECK(c.probabilities() == std::vector<double>{0.25, 0.75});
  CHECK_THROWS_AS(allpay::config_from_json("{"), ValidationError);
  CHECK_THROWS_AS(allpay::config_from_json(R"({"p": [1]})"), ValidationError);
  CHECK_THROWS_AS(allpay::config_from_json(R"({"probabilities": ["a"]})"), ValidationError);
  CHECK_THROWS_AS(allpay::config_from_json(R"({"probabilities": [2]})"), ValidationError);
}
