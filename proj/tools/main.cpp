#include <CLI11.hpp>
#include <iostream>

#include "stopgame/cli.hpp"
#include "stopgame/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, stopgame::RunConfig& config) {
  cmd->add_option_function<std::string>(
         "--mode",
         [&config](const std::string& value) {
           if (value == "rational") {
             config.rational_mode = true;
           } else if (value == "float") {
             config.rational_mode = false;
           } else {
             throw CLI::ValidationError("--mode", "must be rational or float");
           }
         },
         "Arithmetic mode: rational (default) or float");
  cmd->add_option("--cap-stopping-times", config.cap_stopping_times,
                  "Stopping-time enumeration cap");
  cmd->add_option("--cap-maps", config.cap_maps, "Strategy-map enumeration cap");
  cmd->add_option("--seed", config.seed, "Seed for generated instances");
  cmd->add_option("--out", config.out_path, "Output file (default: stdout)");
  cmd->add_option_function<std::string>(
         "--format",
         [&config](const std::string& value) {
           if (value == "json") {
             config.format = stopgame::RunConfig::Format::kJson;
           } else if (value == "csv") {
             config.format = stopgame::RunConfig::Format::kCsv;
           } else {
             throw CLI::ValidationError("--format", "must be json or csv");
           }
         },
         "Output format: json (default) or csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stopgame: stopper-vs-stopper games on finite event trees"};
  app.require_subcommand(1);

  stopgame::RunConfig config;

  CLI::App* solve = app.add_subcommand("solve", "Conditional value families and Dynkin games");
  solve->add_option("--instance", config.instance_path, "Instance JSON file")->required();
  add_common_flags(solve, config);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive strategy-map game values");
  oracle->add_option("--instance", config.instance_path, "Instance JSON file")->required();
  add_common_flags(oracle, config);

  CLI::App* verify = app.add_subcommand("verify", "Invariant suite; exit 4 on any failure");
  verify->add_option("--instance", config.instance_path,
                     "Instance JSON file (default: built-in battery)");
  add_common_flags(verify, config);

  CLI::App* counterexample =
      app.add_subcommand("counterexample", "Built-in step-payoff fixture, golden (1,0,0,1)");
  add_common_flags(counterexample, config);

  CLI::App* refine = app.add_subcommand("refine", "Grid-halving convergence study");
  refine->add_option("--payoff", config.refine_payoff, "abs_time_diff or w_process");
  refine->add_option("--levels", config.refine_levels, "Number of refinement levels")
      ->check(CLI::PositiveNumber);
  add_common_flags(refine, config);

  CLI::App* report = app.add_subcommand("report", "Aggregate prior run reports");
  report->add_option("inputs", config.report_inputs, "Prior JSON reports")->required();
  add_common_flags(report, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return stopgame::kExitUsage;
  }

  using Command = stopgame::RunConfig::Command;
  if (solve->parsed()) config.command = Command::kSolve;
  if (oracle->parsed()) config.command = Command::kOracle;
  if (verify->parsed()) config.command = Command::kVerify;
  if (counterexample->parsed()) config.command = Command::kCounterexample;
  if (refine->parsed()) config.command = Command::kRefine;
  if (report->parsed()) config.command = Command::kReport;

  try {
    return stopgame::run(config, std::cout);
  } catch (const stopgame::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return stopgame::kExitCapacity;
  } catch (const stopgame::ValidationError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return stopgame::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return stopgame::kExitData;
  }
}
