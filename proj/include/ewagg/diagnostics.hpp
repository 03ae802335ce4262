#ifndef EWAGG_DIAGNOSTICS_HPP
#define EWAGG_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "ewagg/aggregator.hpp"
#include "ewagg/mixloss.hpp"

// Machine-checks every per-round and cumulative inequality behind the
// aggregator's regret guarantee. Failures are recorded, never thrown:
// a failing certificate is the interesting data.

namespace ewagg {

// Additive tolerance scaled by the largest magnitude in the inequality.
inline double cert_tolerance(std::initializer_list<double> magnitudes) {
  double m = 1.0;
  for (double x : magnitudes) m = std::max(m, std::abs(x));
  return 1e-9 * m;
}

struct RoundCertificate {
  long long t = 0;
  bool simplex_ok = false;
  bool eta_monotone_ok = false;
  bool convexity_ok = false;      // h_t <= max_n l_t^n
  bool mixloss_ineq_ok = false;   // h_t <= m_t + dagger^2 - B^2
  // Positive slack = margin by which the inequality holds.
  double simplex_gap = 0.0;       // |sum w - 1|
  double eta_slack = 0.0;
  double convexity_slack = 0.0;
  double mixloss_slack = 0.0;
  // False for baseline records: only simplex/convexity are meaningful.
  bool proof_fields_applicable = true;

  bool all_ok() const {
    if (!simplex_ok || !convexity_ok) return false;
    return !proof_fields_applicable || (eta_monotone_ok && mixloss_ineq_ok);
  }
};

struct RegretReport {
  double total_player_loss = 0.0;
  double best_expert_loss = 0.0;
  int best_expert_index = 0;        // 0-based
  double regret = 0.0;
  double max_expert_loss = 0.0;     // max over all t, n
  double final_scale_dagger = 0.0;
  double bound_dagger = 0.0;        // (2 ln N + 1) * dagger^2
  double bound_maxloss = 0.0;       // 4 (2 ln N + 1) * max loss
  bool regret_within_dagger_ok = false;
  bool regret_within_maxloss_ok = false;
  double mixloss_cum_lhs = 0.0;     // sum_t m_t(eta_t)
  double mixloss_cum_rhs = 0.0;     // ln N / eta_T + min_n L_T^n
  bool mixloss_cum_bound_applicable = false;  // false when eta_T unbounded
  bool mixloss_cum_bound_ok = false;
  bool dagger_dominated_ok = false; // dagger_T <= 2 max sqrt(l)
  bool proof_checks_applicable = true;
  std::vector<RoundCertificate> rounds;
  bool all_rounds_ok = false;

  bool all_ok() const {
    if (!all_rounds_ok) return false;
    if (!proof_checks_applicable) return true;
    if (!regret_within_dagger_ok || !regret_within_maxloss_ok) return false;
    if (!dagger_dominated_ok) return false;
    if (mixloss_cum_bound_applicable && !mixloss_cum_bound_ok) return false;
    return true;
  }
};

inline RoundCertificate certify_round(double prev_dagger,
                                      const RoundRecord& record,
                                      double prev_eta) {
  RoundCertificate cert;
  cert.t = record.t;

  double wsum = 0.0;
  double wmin = 0.0;
  for (double w : record.weights) {
    wsum += w;
    wmin = std::min(wmin, w);
  }
  cert.simplex_gap = std::abs(wsum - 1.0);
  cert.simplex_ok = cert.simplex_gap <= kSimplexTolerance && wmin >= 0.0;

  if (eta_is_unbounded(prev_eta)) {
    // An unbounded rate is monotone-compatible with any successor.
    cert.eta_monotone_ok = true;
    cert.eta_slack = 0.0;
  } else if (eta_is_unbounded(record.eta)) {
    // eta can only grow back to unbounded if the scale dropped, which the
    // nondecreasing dagger forbids.
    cert.eta_monotone_ok = false;
    cert.eta_slack = 0.0;
  } else {
    cert.eta_slack = prev_eta - record.eta;
    cert.eta_monotone_ok =
        cert.eta_slack >= -cert_tolerance({prev_eta, record.eta});
  }

  const double max_loss = *std::max_element(record.expert_losses.begin(),
                                            record.expert_losses.end());
  cert.convexity_slack = max_loss - record.player_loss;
  cert.convexity_ok =
      cert.convexity_slack >= -cert_tolerance({max_loss, record.player_loss});

  const double rhs = record.mixloss_value +
                     record.scale_dagger * record.scale_dagger -
                     record.scale * record.scale;
  cert.mixloss_slack = rhs - record.player_loss;
  cert.mixloss_ineq_ok =
      cert.mixloss_slack >= -cert_tolerance({rhs, record.player_loss});

  // The carried scale may never shrink; this is the dagger-side statement
  // of eta monotonicity.
  if (record.scale < prev_dagger - cert_tolerance({record.scale, prev_dagger}))
    cert.eta_monotone_ok = false;
  return cert;
}

// Simplex/convexity only; the proof inequalities do not apply to baselines.
inline RoundCertificate certify_round_basic(const RoundRecord& record) {
  RoundCertificate cert = certify_round(0.0, record, kUnboundedEta);
  cert.proof_fields_applicable = false;
  cert.eta_monotone_ok = true;
  cert.mixloss_ineq_ok = true;
  cert.eta_slack = 0.0;
  cert.mixloss_slack = 0.0;
  return cert;
}

inline RegretReport certify_run(std::span<const RoundRecord> records,
                                int num_experts, bool proof_checks = true) {
  if (records.empty()) throw InvariantError("certify_run: empty run");
  if (num_experts < 1) throw InvariantError("certify_run: num_experts < 1");

  RegretReport report;
  report.proof_checks_applicable = proof_checks;

  std::vector<double> cumulative(static_cast<std::size_t>(num_experts), 0.0);
  double mix_sum = 0.0;
  double max_sqrt_loss = 0.0;
  double prev_dagger = 0.0;
  double prev_eta = kUnboundedEta;
  report.all_rounds_ok = true;
  report.rounds.reserve(records.size());
  for (const RoundRecord& rec : records) {
    if (rec.expert_losses.size() != cumulative.size())
      throw InvariantError("certify_run: expert count mismatch at round " +
                           std::to_string(rec.t));
    RoundCertificate cert = proof_checks
                                ? certify_round(prev_dagger, rec, prev_eta)
                                : certify_round_basic(rec);
    report.all_rounds_ok = report.all_rounds_ok && cert.all_ok();
    report.rounds.push_back(cert);

    report.total_player_loss += rec.player_loss;
    for (std::size_t n = 0; n < cumulative.size(); ++n)
      cumulative[n] += rec.expert_losses[n];
    for (double l : rec.expert_losses) {
      report.max_expert_loss = std::max(report.max_expert_loss, l);
      max_sqrt_loss = std::max(max_sqrt_loss, std::sqrt(l));
    }
    mix_sum += rec.mixloss_value;
    prev_dagger = rec.scale_dagger;
    prev_eta = rec.eta;
  }

  const auto best = std::min_element(cumulative.begin(), cumulative.end());
  report.best_expert_index =
      static_cast<int>(std::distance(cumulative.begin(), best));
  report.best_expert_loss = *best;
  report.regret = report.total_player_loss - report.best_expert_loss;
  report.final_scale_dagger = records.back().scale_dagger;

  const double log_factor = 2.0 * std::log(static_cast<double>(num_experts)) + 1.0;
  report.bound_dagger =
      log_factor * report.final_scale_dagger * report.final_scale_dagger;
  report.bound_maxloss = 4.0 * log_factor * report.max_expert_loss;
  report.regret_within_dagger_ok =
      report.regret <=
      report.bound_dagger + cert_tolerance({report.regret, report.bound_dagger});
  report.regret_within_maxloss_ok =
      report.regret <= report.bound_maxloss +
                           cert_tolerance({report.regret, report.bound_maxloss});

  const double final_eta = records.back().eta;
  report.mixloss_cum_lhs = mix_sum;
  if (proof_checks && !eta_is_unbounded(final_eta)) {
    report.mixloss_cum_bound_applicable = true;
    report.mixloss_cum_rhs =
        std::log(static_cast<double>(num_experts)) / final_eta +
        report.best_expert_loss;
    report.mixloss_cum_bound_ok =
        mix_sum <= report.mixloss_cum_rhs +
                       cert_tolerance({mix_sum, report.mixloss_cum_rhs});
  }

  report.dagger_dominated_ok =
      report.final_scale_dagger <=
      2.0 * max_sqrt_loss +
          1e-12 * std::max(1.0, report.final_scale_dagger);
  return report;
}

}  // namespace ewagg

#endif
