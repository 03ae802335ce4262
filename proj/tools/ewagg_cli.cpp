#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ewagg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Online expert aggregation with a self-tuned learning rate"};
  app.require_subcommand(1);

  ewagg::RunOptions run_options;
  CLI::App* run = app.add_subcommand(
      "run", "Run one aggregator over a stream and certify the regret bound");
  run->add_option("--input", run_options.input_path,
                  "Stream file (ewagg-stream format)");
  run->add_option("--scenario", run_options.scenario,
                  "Scenario spec, e.g. family=scale_burst,N=10,T=1000,D=4,"
                  "seed=7[,sigma=..,M=..,p=..,k=..,grid=..]");
  run->add_option("--algo", run_options.algo,
                  "paper | uniform | ftl | fixed-ew:<B>")
      ->capture_default_str();
  run->add_option("--out", run_options.out_path, "Run log path (JSON Lines)");
  run->add_option("--report", run_options.report_path,
                  "Regret report path (JSON)");

  ewagg::CompareOptions compare_options;
  std::string algos_csv;
  CLI::App* compare = app.add_subcommand(
      "compare", "Run several algorithms on one stream, emit plot-ready CSV");
  compare->add_option("--scenario", compare_options.scenario, "Scenario spec")
      ->required();
  compare->add_option("--algos", algos_csv,
                      "Comma-separated algorithm list (at least two)")
      ->required();
  compare->add_option("--out", compare_options.out_path, "CSV output path");

  std::string log_path;
  CLI::App* verify = app.add_subcommand(
      "verify", "Re-check all certificates from a stored run log");
  verify->add_option("--log", log_path, "Run log path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? ewagg::kExitOk : ewagg::kExitUsage;
  }

  if (run->parsed())
    return ewagg::cmd_run(run_options, std::cout, std::cerr);
  if (compare->parsed()) {
    std::size_t pos = 0;
    while (pos <= algos_csv.size()) {
      std::size_t end = algos_csv.find(',', pos);
      if (end == std::string::npos) end = algos_csv.size();
      if (end > pos)
        compare_options.algos.push_back(algos_csv.substr(pos, end - pos));
      pos = end + 1;
    }
    return ewagg::cmd_compare(compare_options, std::cout, std::cerr);
  }
  return ewagg::cmd_verify(log_path, std::cout, std::cerr);
}
