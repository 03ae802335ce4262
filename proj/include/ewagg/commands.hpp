#ifndef EWAGG_COMMANDS_HPP
#define EWAGG_COMMANDS_HPP

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "ewagg/baselines.hpp"
#include "ewagg/diagnostics.hpp"
#include "ewagg/run_log.hpp"
#include "ewagg/scenarios.hpp"
#include "ewagg/stream_io.hpp"

// Command implementations behind the CLI binary, kept header-side so the
// test suite can drive them directly. Exit codes partition outcomes:
//   0  all certificates pass
//   1  usage / parse / configuration error
//   2  at least one certificate fails

namespace ewagg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertificateFailure = 2;

struct AlgoChoice {
  bool paper = true;
  BaselineKind baseline;
  std::string name = "paper";
};

// Accepted: paper | uniform | ftl | fixed-ew:<B>
inline AlgoChoice parse_algo(const std::string& text) {
  AlgoChoice choice;
  choice.name = text;
  if (text == "paper") {
    choice.paper = true;
  } else if (text == "uniform") {
    choice.paper = false;
    choice.baseline = BaselineKind::uniform();
  } else if (text == "ftl") {
    choice.paper = false;
    choice.baseline = BaselineKind::follow_leader();
  } else if (text.rfind("fixed-ew:", 0) == 0) {
    choice.paper = false;
    double bound = 0.0;
    try {
      bound = std::stod(text.substr(9));
    } catch (const std::exception&) {
      throw ConfigError("bad fixed-ew bound in '" + text + "'");
    }
    choice.baseline = BaselineKind::fixed_bound_ew(bound);
  } else {
    throw ConfigError("unknown algorithm '" + text + "'");
  }
  return choice;
}

struct RunOptions {
  std::string input_path;  // exactly one of input_path / scenario
  std::string scenario;
  std::string algo = "paper";
  std::string out_path;     // run log (JSON Lines); optional
  std::string report_path;  // regret report (single JSON doc); optional
};

namespace detail {

struct LoadedStream {
  AggregatorConfig config;
  Stream stream;
};

inline LoadedStream load_input(const std::string& input_path,
                               const std::string& scenario) {
  LoadedStream loaded;
  if (!input_path.empty()) {
    ParsedStream parsed = read_stream(input_path);
    loaded.config.num_experts = parsed.num_experts;
    loaded.config.dimension = parsed.dimension;
    loaded.stream = std::move(parsed.rounds);
  } else {
    ScenarioSpec spec = parse_scenario(scenario);
    loaded.config.num_experts = spec.num_experts;
    loaded.config.dimension = spec.dimension;
    loaded.config.declared_horizon = spec.horizon;
    loaded.stream = generate(spec);
  }
  return loaded;
}

inline std::vector<RoundRecord> run_algo(const AlgoChoice& algo,
                                         const AggregatorConfig& config,
                                         const Stream& stream) {
  return algo.paper ? run(config, stream)
                    : run_baseline(algo.baseline, config, stream);
}

inline RegretReport empty_run_report() {
  RegretReport report;
  report.all_rounds_ok = true;
  report.regret_within_dagger_ok = true;
  report.regret_within_maxloss_ok = true;
  report.dagger_dominated_ok = true;
  return report;
}

}  // namespace detail

inline int cmd_run(const RunOptions& options, std::ostream& out,
                   std::ostream& err) {
  if (options.input_path.empty() == options.scenario.empty()) {
    err << "error: exactly one of --input and --scenario is required\n";
    return kExitUsage;
  }
  try {
    const AlgoChoice algo = parse_algo(options.algo);
    detail::LoadedStream loaded =
        detail::load_input(options.input_path, options.scenario);
    const std::vector<RoundRecord> records =
        detail::run_algo(algo, loaded.config, loaded.stream);
    const RegretReport report =
        records.empty()
            ? detail::empty_run_report()
            : certify_run(records, loaded.config.num_experts, algo.paper);

    if (!options.out_path.empty())
      write_run_log(options.out_path, records, report);
    if (!options.report_path.empty()) {
      std::ofstream rep(options.report_path);
      if (!rep) throw ParseError("cannot write '" + options.report_path + "'");
      rep << report_to_json(report).dump(2) << '\n';
    }

    out << "algo=" << algo.name << " rounds=" << records.size()
        << " regret=" << report.regret
        << " bound_dagger=" << report.bound_dagger
        << " bound_maxloss=" << report.bound_maxloss
        << " certified=" << (report.all_ok() ? "yes" : "no") << '\n';
    return report.all_ok() ? kExitOk : kExitCertificateFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct CompareOptions {
  std::string scenario;
  std::vector<std::string> algos;
  std::string out_path;  // CSV
};

inline int cmd_compare(const CompareOptions& options, std::ostream& out,
                       std::ostream& err) {
  if (options.scenario.empty() || options.algos.size() < 2) {
    err << "error: --scenario and at least two --algos are required\n";
    return kExitUsage;
  }
  try {
    const ScenarioSpec spec = parse_scenario(options.scenario);
    AggregatorConfig config{spec.num_experts, spec.dimension, spec.horizon};
    const Stream stream = generate(spec);

    std::ofstream csv;
    std::ostream* sink = &out;
    if (!options.out_path.empty()) {
      csv.open(options.out_path);
      if (!csv) throw ParseError("cannot write '" + options.out_path + "'");
      sink = &csv;
    }
    *sink << "t,algo,cumulative_player_loss,cumulative_best_expert_loss,"
             "regret\n";

    bool all_certified = true;
    for (const std::string& name : options.algos) {
      const AlgoChoice algo = parse_algo(name);
      const std::vector<RoundRecord> records =
          detail::run_algo(algo, config, stream);
      if (!records.empty()) {
        const RegretReport report =
            certify_run(records, config.num_experts, algo.paper);
        all_certified = all_certified && report.all_ok();
      }
      std::vector<double> cumulative(
          static_cast<std::size_t>(config.num_experts), 0.0);
      double player_total = 0.0;
      for (const RoundRecord& rec : records) {
        player_total += rec.player_loss;
        for (std::size_t n = 0; n < cumulative.size(); ++n)
          cumulative[n] += rec.expert_losses[n];
        const double best =
            *std::min_element(cumulative.begin(), cumulative.end());
        *sink << rec.t << ',' << name << ','
              << detail::format_double(player_total) << ','
              << detail::format_double(best) << ','
              << detail::format_double(player_total - best) << '\n';
      }
    }
    return all_certified ? kExitOk : kExitCertificateFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  }
}

inline int cmd_verify(const std::string& log_path, std::ostream& out,
                      std::ostream& err) {
  try {
    const ParsedRunLog log = read_run_log(log_path);
    if (log.records.empty()) {
      out << "empty run, nothing to verify\n";
      return kExitOk;
    }
    const int num_experts = static_cast<int>(log.records.front().weights.size());
    bool proof_checks = true;
    if (log.report.contains("proof_checks_applicable"))
      proof_checks = log.report["proof_checks_applicable"].get<bool>();
    const RegretReport report =
        certify_run(log.records, num_experts, proof_checks);
    out << "rounds=" << log.records.size() << " regret=" << report.regret
        << " certified=" << (report.all_ok() ? "yes" : "no") << '\n';
    return report.all_ok() ? kExitOk : kExitCertificateFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ewagg

#endif
