#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "allpay/report.hpp"
#include "cli.hpp"

using namespace allpay;
using report::Json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "allpay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kExampleProbs = "0.3333333333333333,0.5,0.75,1";

Equilibrium example() {
  return Equilibrium(build_config(std::vector<double>{0.3333333333333333, 0.5, 0.75, 1.0}));
}

}  // namespace

TEST_CASE("equilibrium subcommand") {
  const auto r = run({"equilibrium", "--probs", "0.3333,0.5,0.75,1"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  CHECK(Json::parse(r.out)["max_profit"].get<double>() == doctest::Approx(0.490).epsilon(0.005));

  const auto exact = run({"equilibrium", "--probs", kExampleProbs});
  CHECK(exact.out == report::equilibrium_json(example()).dump(2) + "\n");

  const auto sure = Json::parse(run({"equilibrium", "--probs", "1,1"}).out);
  CHECK(sure["lambda"] == 0.0);
  CHECK(sure["sorted"][0]["expected_utility"] == 0.0);

  const auto csv = run({"equilibrium", "--probs", "0.5,1", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.find("expected_bid,1,0.25\n") != std::string::npos);
  CHECK(csv.out.find("expected_bid,2,0.125\n") != std::string::npos);
}

TEST_CASE("probability input errors") {
  CHECK(run({"equilibrium", "--probs", "0.5"}).code == 2);
  CHECK(run({"equilibrium", "--probs", "0.5,1.5"}).code == 2);
  CHECK(run({"equilibrium", "--probs", "0.5,abc"}).code == 2);
  CHECK(run({"equilibrium", "--probs", "0.5,,1"}).code == 2);
  CHECK(run({"equilibrium", "--probs", "0,0"}).code == 2);
  const auto missing = run({"equilibrium"});
  CHECK(missing.code == 2);
  CHECK(missing.out.empty());
  CHECK_FALSE(missing.err.empty());
  CHECK(run({"equilibrium", "--config", "/nonexistent/probs.json"}).code == 2);
  CHECK(run({"equilibrium", "--probs", "0.5,1", "--format", "xml"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("config file input") {
  const auto path = std::filesystem::temp_directory_path() / "allpay_cli_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"probabilities": [1, 0.5]})";
  }
  const auto from_file = run({"equilibrium", "--config", path.string()});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == run({"equilibrium", "--probs", "1,0.5"}).out);
  CHECK(run({"equilibrium", "--config", path.string(), "--probs", "1,0.5"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("simulate subcommand") {
  const auto a = run({"simulate", "--probs", kExampleProbs, "--trials", "100000", "--seed", "7"});
  const auto b = run({"simulate", "--probs", kExampleProbs, "--trials", "100000", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["seed"] == 7);
  const auto& sum = j["sum_revenue"];
  CHECK(std::abs(sum["mean"].get<double>() - 113.0 / 144) <= 4 * sum["mean_se"].get<double>());

  const auto defaulted = Json::parse(run({"simulate", "--probs", "0.5,1", "--trials", "10"}).out);
  CHECK(defaulted["seed"] == 0);
  CHECK(run({"simulate", "--probs", "0.5,1", "--trials", "0"}).code == 2);

  setenv("ALLPAY_EQ_THREADS", "1", 1);
  const auto capped = run({"simulate", "--probs", kExampleProbs, "--trials", "100000", "--seed", "7"});
  CHECK(capped.out == a.out);
  setenv("ALLPAY_EQ_THREADS", "many", 1);
  CHECK(run({"simulate", "--probs", "0.5,1", "--trials", "10"}).code == 2);
  unsetenv("ALLPAY_EQ_THREADS");

  const auto csv = run({"simulate", "--probs", "0.5,1", "--trials", "10", "--format", "csv"});
  CHECK(csv.out.find("seed,,0,,,\n") != std::string::npos);
}

TEST_CASE("sabotage subcommand") {
  const auto r = run({"sabotage", "--probs", "0.5,0.5,0.5", "--i", "2", "--r", "1", "--p-prime", "0.25"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["bid"].get<double>() == doctest::Approx(0.0));
  CHECK(j["expected_profit"].get<double>() == doctest::Approx(0.375));

  CHECK(run({"sabotage", "--probs", "0.5,0.5,0.5", "--i", "2", "--r", "1", "--p-prime", "0.5"}).code == 2);
  CHECK(run({"sabotage", "--probs", "0.5,0.5,0.5", "--i", "2", "--r", "2", "--p-prime", "0.1"}).code == 2);
  CHECK(run({"sabotage", "--probs", "0.5,0.5,0.5", "--i", "4", "--r", "1", "--p-prime", "0.1"}).code == 2);
  CHECK(run({"sabotage", "--probs", "0,0.5,0.5", "--i", "1", "--r", "2", "--p-prime", "0.1"}).code == 2);

  // Caller numbering: bidder 4 in input order is the most reliable.
  const auto eq = example();
  const SabotageScenario s{3, 0, 0.0};
  const auto plan = optimal_sabotage_bid(eq, s);
  const auto ex = run({"sabotage", "--probs", kExampleProbs, "--i", "4", "--r", "1", "--p-prime", "0"});
  CHECK(ex.out == report::sabotage_json(plan, eq, s).dump(2) + "\n");
  const auto shuffled = Json::parse(
      run({"sabotage", "--probs", "1,0.75,0.5,0.3333333333333333", "--i", "1", "--r", "4", "--p-prime", "0"}).out);
  CHECK(shuffled["bid"].get<double>() == plan.bid);
  CHECK(shuffled["saboteur"] == 1);
}

TEST_CASE("uniform, table and audit subcommands") {
  const auto u = run({"uniform", "--n", "3", "--p", "0.5"});
  REQUIRE(u.code == 0);
  CHECK(u.out == report::uniform_json(uniform_report({3, 0.5})).dump(2) + "\n");
  CHECK(run({"uniform", "--n", "1", "--p", "0.5"}).code == 2);
  CHECK(run({"uniform", "--n", "3"}).code == 2);

  const auto t = run({"table", "--probs", "0.5,1", "--grid", "3", "--format", "csv"});
  REQUIRE(t.code == 0);
  CHECK(t.out == "bidder,x,cdf,pdf\n1,0,0,2\n1,0.25,0.5,2\n1,0.5,1,0\n2,0,0.5,\n2,0.25,0.75,1\n2,0.5,1,0\n");
  CHECK(run({"table", "--probs", "0.5,1", "--grid", "1"}).code == 2);

  const auto a = run({"audit", "--probs", kExampleProbs, "--grid", "1001"});
  REQUIRE(a.code == 0);
  for (const auto& row : Json::parse(a.out)) CHECK(row["deviation_gain"].get<double>() <= 1e-9);
}

TEST_CASE("help") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("simulate") != std::string::npos);
}
