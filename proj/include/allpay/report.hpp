#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "allpay/equilibrium.hpp"
#include "allpay/metrics.hpp"
#include "allpay/sabotage.hpp"
#include "allpay/simulator.hpp"
#include "allpay/uniform.hpp"

// JSON and CSV encodings of every result type. Bidders are numbered from 1
// in the caller's original order; "sorted" arrays additionally carry the
// ascending-probability view. CSV numbers use 12 significant digits.
namespace allpay::report {

using Json = nlohmann::json;

std::string format_number(double value);

Json to_json(const RevenueReport& revenue, const AuctionConfig& config);

Json equilibrium_json(const Equilibrium& eq);
/// Long format: quantity,bidder,value.
std::string equilibrium_csv(const Equilibrium& eq);

struct TableRow {
  std::size_t bidder = 0;  // caller index, 1-based
  double x = 0.0;
  double cdf = 0.0;
  std::optional<double> pdf;  // empty at an atom
};

/// Every bidder's CDF and density at `grid_points` evenly spaced bids on [0, s_0].
std::vector<TableRow> distribution_table(const Equilibrium& eq, std::size_t grid_points);
Json table_json(const std::vector<TableRow>& rows);
std::string table_csv(const std::vector<TableRow>& rows);

Json simulation_json(const SimulationReport& report, const std::vector<ComparisonRow>& comparison);
/// quantity,bidder,empirical,standard_error,analytic,z_score; the first two
/// rows carry the trial count and seed in the empirical column.
std::string simulation_csv(const SimulationReport& report, const std::vector<ComparisonRow>& comparison);

Json sabotage_json(const SabotagePlan& plan, const Equilibrium& eq, const SabotageScenario& scenario);
std::string sabotage_csv(const SabotagePlan& plan);

Json uniform_json(const UniformReport& report);
std::string uniform_csv(const UniformReport& report);

Json audit_json(const std::vector<AuditResult>& results, const AuctionConfig& config);
std::string audit_csv(const std::vector<AuditResult>& results, const AuctionConfig& config);

}  // namespace allpay::report
