#include "allpay/report.hpp"

#include <cstdio>
#include <sstream>

#include "allpay/errors.hpp"

namespace allpay::report {

namespace {

std::size_t caller_id(const AuctionConfig& config, std::size_t sorted) {
  return config.user_order().at(sorted) + 1;
}

Json moment_json(const Moment& m) { return Json{{"mean", m.mean}, {"variance", m.variance}}; }

Json estimate_json(const Estimate& e) {
  return Json{{"count", e.count},
              {"mean", e.mean},
              {"variance", e.variance},
              {"mean_se", e.mean_se},
              {"variance_se", e.variance_se}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json to_json(const RevenueReport& revenue, const AuctionConfig& config) {
  Json sorted = Json::array();
  for (std::size_t k = 0; k < config.size(); ++k) {
    sorted.push_back({{"bidder", caller_id(config, k)},
                      {"probability", config.probability(k)},
                      {"expected_bid", revenue.expected_bid[k]},
                      {"expected_utility", revenue.expected_utility[k]}});
  }
  Json caller = Json::array();
  const auto bids = config.to_caller_order(revenue.expected_bid);
  const auto utilities = config.to_caller_order(revenue.expected_utility);
  for (std::size_t c = 0; c < config.raw_size(); ++c) {
    const std::size_t k = config.sorted_index_of(c);
    caller.push_back({{"bidder", c + 1},
                      {"probability", k == AuctionConfig::npos ? 0.0 : config.probability(k)},
                      {"expected_bid", bids[c]},
                      {"expected_utility", utilities[c]}});
  }
  return Json{{"lambda", revenue.lambda},
              {"sum_profit", revenue.sum_profit},
              {"max_profit", revenue.max_profit},
              {"sorted", std::move(sorted)},
              {"caller_order", std::move(caller)}};
}

Json equilibrium_json(const Equilibrium& eq) {
  const RevenueReport revenue = revenue_report(eq);
  Json out = to_json(revenue, eq.config());
  out["breakpoints"] = eq.breakpoints();
  out["atom_n"] = eq.profile().atom_n;
  Json dropped = Json::array();
  for (std::size_t c : eq.config().dropped()) dropped.push_back(c + 1);
  out["dropped"] = std::move(dropped);
  for (std::size_t k = 0; k < eq.size(); ++k) {
    const auto& dist = eq.distribution(k);
    auto& entry = out["sorted"][k];
    entry["atom_at_zero"] = dist.atom_at_zero();
    entry["support"] = {dist.support_lower(), dist.support_upper()};
  }
  return out;
}

std::string equilibrium_csv(const Equilibrium& eq) {
  const RevenueReport revenue = revenue_report(eq);
  const AuctionConfig& config = eq.config();
  std::ostringstream out;
  out << "quantity,bidder,value\n";
  out << "lambda,," << format_number(revenue.lambda) << '\n';
  for (std::size_t k = 0; k < eq.breakpoints().size(); ++k) {
    out << "breakpoint_" << k << ",," << format_number(eq.breakpoints()[k]) << '\n';
  }
  out << "sum_profit,," << format_number(revenue.sum_profit) << '\n';
  out << "max_profit,," << format_number(revenue.max_profit) << '\n';
  for (std::size_t c = 0; c < config.raw_size(); ++c) {
    const std::size_t k = config.sorted_index_of(c);
    const bool present = k != AuctionConfig::npos;
    out << "probability," << c + 1 << ',' << format_number(present ? config.probability(k) : 0.0) << '\n';
    out << "expected_bid," << c + 1 << ',' << format_number(present ? revenue.expected_bid[k] : 0.0) << '\n';
    out << "expected_utility," << c + 1 << ','
        << format_number(present ? revenue.expected_utility[k] : 0.0) << '\n';
    out << "atom_at_zero," << c + 1 << ',' << format_number(present ? eq.atom_at_zero(k) : 0.0) << '\n';
  }
  return out.str();
}

std::vector<TableRow> distribution_table(const Equilibrium& eq, std::size_t grid_points) {
  if (grid_points < 2) {
    throw ValidationError("distribution grid needs at least 2 points");
  }
  std::vector<TableRow> rows;
  rows.reserve(grid_points * eq.size());
  for (std::size_t k = 0; k < eq.size(); ++k) {
    const auto& dist = eq.distribution(k);
    for (std::size_t g = 0; g < grid_points; ++g) {
      const double x =
          g + 1 == grid_points ? eq.top() : eq.top() * static_cast<double>(g) / (grid_points - 1);
      TableRow row{caller_id(eq.config(), k), x, dist.cdf(x), std::nullopt};
      if (!(x == 0.0 && dist.atom_at_zero() > 0.0)) row.pdf = dist.pdf(x);
      rows.push_back(row);
    }
  }
  return rows;
}

Json table_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"bidder", r.bidder}, {"x", r.x}, {"cdf", r.cdf}, {"pdf", optional_number(r.pdf)}});
  }
  return out;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "bidder,x,cdf,pdf\n";
  for (const auto& r : rows) {
    out << r.bidder << ',' << format_number(r.x) << ',' << format_number(r.cdf) << ','
        << optional_field(r.pdf) << '\n';
  }
  return out.str();
}

Json simulation_json(const SimulationReport& report, const std::vector<ComparisonRow>& comparison) {
  Json bidders = Json::array();
  for (std::size_t k = 0; k < report.bidders.size(); ++k) {
    const auto& b = report.bidders[k];
    bidders.push_back({{"bidder", report.user_order[k] + 1},
                       {"probability", b.probability},
                       {"bid", estimate_json(b.bid)},
                       {"utility", estimate_json(b.utility)},
                       {"zero_bid", estimate_json(b.zero_bid)}});
  }
  Json rows = Json::array();
  for (const auto& c : comparison) {
    rows.push_back({{"quantity", c.quantity},
                    {"bidder", c.bidder ? Json(*c.bidder + 1) : Json(nullptr)},
                    {"empirical", c.empirical},
                    {"standard_error", c.standard_error},
                    {"analytic", optional_number(c.analytic)},
                    {"z_score", optional_number(c.z_score)}});
  }
  return Json{{"trials", report.trials},
              {"seed", report.seed},
              {"bidders", std::move(bidders)},
              {"sum_revenue", estimate_json(report.sum_revenue)},
              {"max_revenue", estimate_json(report.max_revenue)},
              {"comparison", std::move(rows)}};
}

std::string simulation_csv(const SimulationReport& report, const std::vector<ComparisonRow>& comparison) {
  std::ostringstream out;
  out << "quantity,bidder,empirical,standard_error,analytic,z_score\n";
  out << "trials,," << report.trials << ",,,\n";
  out << "seed,," << report.seed << ",,,\n";
  for (const auto& c : comparison) {
    out << c.quantity << ',' << (c.bidder ? std::to_string(*c.bidder + 1) : std::string()) << ','
        << format_number(c.empirical) << ',' << format_number(c.standard_error) << ','
        << optional_field(c.analytic) << ',' << optional_field(c.z_score) << '\n';
  }
  return out.str();
}

Json sabotage_json(const SabotagePlan& plan, const Equilibrium& eq, const SabotageScenario& scenario) {
  Json candidates = Json::array();
  for (const auto& c : plan.candidates) {
    candidates.push_back(
        {{"k", c.k}, {"kind", to_string(c.kind)}, {"bid", c.bid}, {"profit", c.profit}});
  }
  return Json{{"saboteur", caller_id(eq.config(), scenario.saboteur)},
              {"target", caller_id(eq.config(), scenario.target)},
              {"announced_probability", eq.probability(scenario.target)},
              {"true_probability", scenario.true_target_probability},
              {"lambda", eq.lambda()},
              {"candidates", std::move(candidates)},
              {"chosen_k", plan.candidates[plan.chosen].k},
              {"bid", plan.bid},
              {"expected_profit", plan.expected_profit}};
}

std::string sabotage_csv(const SabotagePlan& plan) {
  std::ostringstream out;
  out << "k,kind,bid,profit,chosen\n";
  for (std::size_t idx = 0; idx < plan.candidates.size(); ++idx) {
    const auto& c = plan.candidates[idx];
    out << c.k << ',' << to_string(c.kind) << ',' << format_number(c.bid) << ','
        << format_number(c.profit) << ',' << (idx == plan.chosen ? 1 : 0) << '\n';
  }
  return out.str();
}

Json uniform_json(const UniformReport& r) {
  return Json{{"n", r.input.n},
              {"p", r.input.p},
              {"lambda", r.lambda},
              {"bid", moment_json(r.bid)},
              {"bidder_profit", moment_json(r.bidder_profit)},
              {"sum_profit", moment_json(r.sum_profit)},
              {"max_profit", moment_json(r.max_profit)}};
}

std::string uniform_csv(const UniformReport& r) {
  std::ostringstream out;
  out << "quantity,mean,variance\n";
  out << "bid," << format_number(r.bid.mean) << ',' << format_number(r.bid.variance) << '\n';
  out << "bidder_profit," << format_number(r.bidder_profit.mean) << ','
      << format_number(r.bidder_profit.variance) << '\n';
  out << "sum_profit," << format_number(r.sum_profit.mean) << ','
      << format_number(r.sum_profit.variance) << '\n';
  out << "max_profit," << format_number(r.max_profit.mean) << ','
      << format_number(r.max_profit.variance) << '\n';
  return out.str();
}

Json audit_json(const std::vector<AuditResult>& results, const AuctionConfig& config) {
  Json out = Json::array();
  for (const auto& a : results) {
    out.push_back({{"bidder", caller_id(config, a.bidder)},
                   {"max_payoff", a.max_payoff},
                   {"argmax_bid", a.argmax_bid},
                   {"reference_payoff", a.reference_payoff},
                   {"deviation_gain", a.deviation_gain}});
  }
  return out;
}

std::string audit_csv(const std::vector<AuditResult>& results, const AuctionConfig& config) {
  std::ostringstream out;
  out << "bidder,max_payoff,argmax_bid,reference_payoff,deviation_gain\n";
  for (const auto& a : results) {
    out << caller_id(config, a.bidder) << ',' << format_number(a.max_payoff) << ','
        << format_number(a.argmax_bid) << ',' << format_number(a.reference_payoff) << ','
        << format_number(a.deviation_gain) << '\n';
  }
  return out.str();
}

}  // namespace allpay::report
