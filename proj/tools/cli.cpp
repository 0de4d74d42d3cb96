#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "allpay/config.hpp"
#include "allpay/equilibrium.hpp"
#include "allpay/errors.hpp"
#include "allpay/report.hpp"
#include "allpay/sabotage.hpp"
#include "allpay/simulator.hpp"
#include "allpay/uniform.hpp"

namespace allpay::cli {

namespace {

enum class Format { kJson, kCsv };

struct ProbabilityArgs {
  std::string inline_probs;
  std::string config_path;
};

std::vector<double> parse_probability_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto first = token.find_first_not_of(" \t");
    const auto last = token.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw ValidationError("empty entry in --probs");
    }
    token = token.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ValidationError("cannot parse probability '" + token + "'");
    }
    values.push_back(value);
  }
  return values;
}

AuctionConfig load_config(const ProbabilityArgs& args) {
  const bool has_inline = !args.inline_probs.empty();
  const bool has_file = !args.config_path.empty();
  if (has_inline && has_file) {
    throw ValidationError("give probabilities either with --probs or with --config, not both");
  }
  if (!has_inline && !has_file) {
    throw ValidationError("probabilities are required (--probs or --config)");
  }
  if (has_inline) {
    return build_config(parse_probability_list(args.inline_probs));
  }
  std::ifstream in(args.config_path);
  if (!in) {
    throw ValidationError("cannot open config file " + args.config_path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::size_t sorted_bidder(const AuctionConfig& config, int caller_index, const char* flag) {
  if (caller_index < 1 || static_cast<std::size_t>(caller_index) > config.raw_size()) {
    throw ValidationError(std::string(flag) + " must name a bidder between 1 and " +
                          std::to_string(config.raw_size()));
  }
  const std::size_t sorted = config.sorted_index_of(static_cast<std::size_t>(caller_index - 1));
  if (sorted == AuctionConfig::npos) {
    throw ValidationError(std::string(flag) + " names a bidder with zero participation probability");
  }
  return sorted;
}

unsigned thread_cap() {
  const char* raw = std::getenv("ALLPAY_EQ_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned value = 0;
  const std::string text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw ValidationError("ALLPAY_EQ_THREADS must be a positive integer");
  }
  return value;
}

void emit(std::ostream& out, Format format, const report::Json& json, const std::string& csv) {
  if (format == Format::kJson) {
    out << json.dump(2) << '\n';
  } else {
    out << csv;
  }
}

void add_probability_options(CLI::App* cmd, ProbabilityArgs& args) {
  cmd->add_option("--probs", args.inline_probs, "Comma-separated participation probabilities");
  cmd->add_option("--config", args.config_path, "JSON file {\"probabilities\": [...]}");
}

void add_format_option(CLI::App* cmd, Format& format) {
  cmd->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::kJson}, {"csv", Format::kCsv}},
          CLI::ignore_case));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria of all-pay auctions with unreliable bidders", "allpay"};
  app.require_subcommand(1, 1);

  ProbabilityArgs probs;
  Format format = Format::kJson;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::size_t grid = 0;
  int saboteur = 0;
  int target = 0;
  double p_prime = 0.0;
  int uniform_n = 0;
  double uniform_p = 0.0;

  auto* equilibrium = app.add_subcommand("equilibrium", "Equilibrium profile and revenue report");
  add_probability_options(equilibrium, probs);
  add_format_option(equilibrium, format);

  auto* table = app.add_subcommand("table", "CDF/PDF table of every bidder on a bid grid");
  add_probability_options(table, probs);
  add_format_option(table, format);
  table->add_option("--grid", grid, "Number of grid points on [0, s_0]")->default_val(101);

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo check against closed forms");
  add_probability_options(simulate, probs);
  add_format_option(simulate, format);
  simulate->add_option("--trials", trials, "Number of simulated auctions")->default_val(100000);
  simulate->add_option("--seed", seed, "Random seed")->default_val(0);

  auto* sabotage = app.add_subcommand("sabotage", "Optimal bid after secretly sabotaging a rival");
  add_probability_options(sabotage, probs);
  add_format_option(sabotage, format);
  sabotage->add_option("--i", saboteur, "Saboteur (1-based, input order)")->required();
  sabotage->add_option("--r", target, "Sabotaged bidder (1-based, input order)")->required();
  sabotage->add_option("--p-prime", p_prime, "Target's true participation probability")->required();

  auto* uniform = app.add_subcommand("uniform", "Closed forms for n bidders sharing probability p");
  add_format_option(uniform, format);
  uniform->add_option("--n", uniform_n, "Number of bidders")->required();
  uniform->add_option("--p", uniform_p, "Common participation probability")->required();

  auto* audit = app.add_subcommand("audit", "Best-response audit of every bidder on a bid grid");
  add_probability_options(audit, probs);
  add_format_option(audit, format);
  audit->add_option("--grid", grid, "Number of grid points on [0, s_0]")->default_val(10001);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (equilibrium->parsed()) {
      const Equilibrium eq(load_config(probs));
      emit(out, format, report::equilibrium_json(eq), report::equilibrium_csv(eq));
    } else if (table->parsed()) {
      const Equilibrium eq(load_config(probs));
      const auto rows = report::distribution_table(eq, grid);
      emit(out, format, report::table_json(rows), report::table_csv(rows));
    } else if (simulate->parsed()) {
      const SimulationModel model(load_config(probs));
      const MonteCarloOptions options{trials, seed, thread_cap()};
      const SimulationReport sim = monte_carlo(model, options);
      const auto comparison = compare_with_closed_forms(sim, model);
      emit(out, format, report::simulation_json(sim, comparison),
           report::simulation_csv(sim, comparison));
    } else if (sabotage->parsed()) {
      const Equilibrium eq(load_config(probs));
      const SabotageScenario scenario{sorted_bidder(eq.config(), saboteur, "--i"),
                                      sorted_bidder(eq.config(), target, "--r"), p_prime};
      const SabotagePlan plan = optimal_sabotage_bid(eq, scenario);
      emit(out, format, report::sabotage_json(plan, eq, scenario), report::sabotage_csv(plan));
    } else if (uniform->parsed()) {
      const UniformReport r = uniform_report(UniformCase{uniform_n, uniform_p});
      emit(out, format, report::uniform_json(r), report::uniform_csv(r));
    } else if (audit->parsed()) {
      const Equilibrium eq(load_config(probs));
      std::vector<AuditResult> results;
      for (std::size_t i = 0; i < eq.size(); ++i) {
        results.push_back(best_response_audit(eq, i, grid));
      }
      emit(out, format, report::audit_json(results, eq.config()),
           report::audit_csv(results, eq.config()));
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace allpay::cli
