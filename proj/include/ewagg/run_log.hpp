#ifndef EWAGG_RUN_LOG_HPP
#define EWAGG_RUN_LOG_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ewagg/aggregator.hpp"
#include "ewagg/diagnostics.hpp"

// Run logs are JSON Lines: one round record per line, a regret report as
// the final line. Partial logs from interrupted runs stay parseable
// line by line. ordered_json keeps key order fixed so identical runs
// produce byte-identical logs.

namespace ewagg {

using ordered_json = nlohmann::ordered_json;

// JSON has no infinity; the unbounded learning rate travels as a string.
inline ordered_json eta_to_json(double eta) {
  if (eta_is_unbounded(eta)) return "unbounded";
  return eta;
}

inline double eta_from_json(const ordered_json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "unbounded") return kUnboundedEta;
    throw ParseError("bad eta value '" + j.get<std::string>() + "'");
  }
  return j.get<double>();
}

inline ordered_json record_to_json(const RoundRecord& rec) {
  ordered_json j;
  j["type"] = "round";
  j["t"] = rec.t;
  j["B"] = rec.scale;
  j["eta"] = eta_to_json(rec.eta);
  j["weights"] = rec.weights;
  j["aggregated"] = rec.aggregated;
  j["h"] = rec.player_loss;
  j["l"] = rec.expert_losses;
  j["B_dagger"] = rec.scale_dagger;
  j["mixloss"] = rec.mixloss_value;
  return j;
}

inline RoundRecord record_from_json(const ordered_json& j) {
  RoundRecord rec;
  rec.t = j.at("t").get<long long>();
  rec.scale = j.at("B").get<double>();
  rec.eta = eta_from_json(j.at("eta"));
  rec.weights = j.at("weights").get<std::vector<double>>();
  rec.aggregated = j.at("aggregated").get<PredictionVector>();
  rec.player_loss = j.at("h").get<double>();
  rec.expert_losses = j.at("l").get<std::vector<double>>();
  rec.scale_dagger = j.at("B_dagger").get<double>();
  rec.mixloss_value = j.at("mixloss").get<double>();
  return rec;
}

inline ordered_json report_to_json(const RegretReport& report) {
  ordered_json j;
  j["type"] = "report";
  j["total_player_loss"] = report.total_player_loss;
  j["best_expert_loss"] = report.best_expert_loss;
  j["best_expert_index"] = report.best_expert_index;
  j["regret"] = report.regret;
  j["max_expert_loss"] = report.max_expert_loss;
  j["B_dagger_final"] = report.final_scale_dagger;
  j["bound_dagger"] = report.bound_dagger;
  j["bound_maxloss"] = report.bound_maxloss;
  j["proof_checks_applicable"] = report.proof_checks_applicable;
  if (report.proof_checks_applicable) {
    j["regret_within_dagger_ok"] = report.regret_within_dagger_ok;
    j["regret_within_maxloss_ok"] = report.regret_within_maxloss_ok;
    j["dagger_dominated_ok"] = report.dagger_dominated_ok;
    j["mixloss_cum_lhs"] = report.mixloss_cum_lhs;
    if (report.mixloss_cum_bound_applicable) {
      j["mixloss_cum_rhs"] = report.mixloss_cum_rhs;
      j["mixloss_cum_bound_ok"] = report.mixloss_cum_bound_ok;
    } else {
      j["mixloss_cum_rhs"] = nullptr;
      j["mixloss_cum_bound_ok"] = nullptr;
    }
  } else {
    j["regret_within_dagger_ok"] = nullptr;
    j["regret_within_maxloss_ok"] = nullptr;
    j["dagger_dominated_ok"] = nullptr;
    j["mixloss_cum_lhs"] = report.mixloss_cum_lhs;
    j["mixloss_cum_rhs"] = nullptr;
    j["mixloss_cum_bound_ok"] = nullptr;
  }

  // Certificate summary, not the full per-round dump.
  long long failures = 0;
  long long first_failure = 0;
  for (const RoundCertificate& cert : report.rounds) {
    if (!cert.all_ok()) {
      if (failures == 0) first_failure = cert.t;
      ++failures;
    }
  }
  j["rounds"] = report.rounds.size();
  j["round_certificate_failures"] = failures;
  if (failures > 0) j["first_failing_round"] = first_failure;
  j["all_rounds_ok"] = report.all_rounds_ok;
  j["all_ok"] = report.all_ok();
  return j;
}

inline void write_run_log(const std::string& path,
                          const std::vector<RoundRecord>& records,
                          const RegretReport& report) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  for (const RoundRecord& rec : records)
    out << record_to_json(rec).dump() << '\n';
  out << report_to_json(report).dump() << '\n';
  if (!out) throw ParseError("write failed for '" + path + "'");
}

struct ParsedRunLog {
  std::vector<RoundRecord> records;
  ordered_json report;  // final line, as stored
};

inline ParsedRunLog read_run_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  ParsedRunLog log;
  std::string line;
  long line_no = 0;
  bool saw_report = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (saw_report) throw ParseError("content after report line", line_no);
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), line_no);
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "round") {
        log.records.push_back(record_from_json(j));
      } else if (type == "report") {
        log.report = std::move(j);
        saw_report = true;
      } else {
        throw ParseError("unknown line type '" + type + "'", line_no);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad record: ") + e.what(), line_no);
    }
  }
  if (!saw_report) throw ParseError("truncated log: no report line", line_no);
  return log;
}

}  // namespace ewagg

#endif
