#ifndef EWAGG_AGGREGATOR_HPP
#define EWAGG_AGGREGATOR_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ewagg/errors.hpp"
#include "ewagg/mixloss.hpp"
#include "ewagg/stream.hpp"
#include "ewagg/vector_space.hpp"

// The exponential-weights aggregator with a self-tuned, non-increasing
// learning rate. Rounds are two-phase: predict() commits the player's
// aggregated prediction before the outcome exists, update() settles the
// round once nature reveals it.

namespace ewagg {

struct AggregatorConfig {
  int num_experts = 0;
  int dimension = 0;
  // Accepted for completeness; the update rules never consult it.
  std::optional<long long> declared_horizon;
};

struct AggregatorState {
  long long round = 0;
  double scale_dagger = 0.0;               // nondecreasing over the run
  std::vector<double> cumulative_losses;   // one per expert, nondecreasing
};

struct PredictPhase {
  double scale = 0.0;  // B_t: max of carried scale and round diameter
  double eta = 0.0;    // 1/(2*B_t^2), or kUnboundedEta when B_t = 0
  std::vector<double> weights;
  PredictionVector aggregated;
};

// Full audit trail of one settled round.
struct RoundRecord {
  long long t = 0;
  double scale = 0.0;         // B_t
  double eta = 0.0;           // eta_t
  std::vector<double> weights;
  PredictionVector aggregated;
  double player_loss = 0.0;   // h_t
  std::vector<double> expert_losses;  // l_t^n
  double scale_dagger = 0.0;  // B^dagger_t, post-update
  double mixloss_value = 0.0; // m_t(eta_t)
};

inline AggregatorState init(const AggregatorConfig& config) {
  if (config.num_experts < 1)
    throw ConfigError("num_experts must be >= 1");
  if (config.dimension < 1)
    throw ConfigError("dimension must be >= 1");
  AggregatorState state;
  state.cumulative_losses.assign(static_cast<std::size_t>(config.num_experts),
                                 0.0);
  return state;
}

// w_n proportional to exp(-eta * L_n), evaluated with a min-loss shift so
// the normalizer never underflows to zero. For unbounded eta: uniform over
// the argmin of L.
inline std::vector<double> weights_from_losses(std::span<const double> losses,
                                               double eta) {
  if (losses.empty()) throw InvariantError("weights_from_losses: empty losses");
  if (!is_finite(losses))
    throw InputError("weights_from_losses: non-finite cumulative loss");
  const double lmin = *std::min_element(losses.begin(), losses.end());
  std::vector<double> w(losses.size());
  if (eta_is_unbounded(eta)) {
    std::size_t ties = 0;
    for (double l : losses) ties += (l == lmin);
    for (std::size_t n = 0; n < losses.size(); ++n)
      w[n] = (losses[n] == lmin) ? 1.0 / static_cast<double>(ties) : 0.0;
    return w;
  }
  double z = 0.0;
  for (std::size_t n = 0; n < losses.size(); ++n) {
    w[n] = std::exp(-eta * (losses[n] - lmin));
    z += w[n];
  }
  for (double& x : w) x /= z;
  return w;
}

namespace detail {

inline void check_predictions(const AggregatorConfig& config,
                              std::span<const PredictionVector> predictions) {
  if (predictions.size() != static_cast<std::size_t>(config.num_experts))
    throw InputError("expected " + std::to_string(config.num_experts) +
                     " predictions, got " + std::to_string(predictions.size()));
  for (std::size_t n = 0; n < predictions.size(); ++n) {
    if (predictions[n].size() != static_cast<std::size_t>(config.dimension))
      throw InputError("prediction " + std::to_string(n) +
                       " has wrong dimension");
    if (!is_finite(predictions[n]))
      throw InputError("prediction " + std::to_string(n) +
                       " has a non-finite coordinate");
  }
}

}  // namespace detail

inline PredictPhase predict(const AggregatorConfig& config,
                            const AggregatorState& state,
                            std::span<const PredictionVector> predictions) {
  detail::check_predictions(config, predictions);
  PredictPhase phase;
  phase.scale = std::max(state.scale_dagger, max_pairwise_distance(predictions));
  phase.eta = phase.scale > 0.0 ? 1.0 / (2.0 * phase.scale * phase.scale)
                                : kUnboundedEta;
  phase.weights = weights_from_losses(state.cumulative_losses, phase.eta);
  phase.aggregated = convex_combine(phase.weights, predictions);
  return phase;
}

inline std::pair<AggregatorState, RoundRecord> update(
    AggregatorState state, const PredictPhase& phase,
    std::span<const PredictionVector> predictions,
    const PredictionVector& outcome) {
  if (outcome.size() != phase.aggregated.size())
    throw InputError("outcome has wrong dimension");
  if (!is_finite(outcome))
    throw InputError("outcome has a non-finite coordinate");

  RoundRecord rec;
  rec.t = state.round + 1;
  rec.scale = phase.scale;
  rec.eta = phase.eta;
  rec.weights = phase.weights;
  rec.aggregated = phase.aggregated;

  const double h = distance(outcome, phase.aggregated);
  rec.player_loss = h * h;
  rec.expert_losses.resize(predictions.size());
  double max_sqrt_loss = 0.0;
  for (std::size_t n = 0; n < predictions.size(); ++n) {
    const double dist = distance(outcome, predictions[n]);
    rec.expert_losses[n] = dist * dist;
    max_sqrt_loss = std::max(max_sqrt_loss, dist);
  }

  // B^dagger_t <- B_t, escalated by sqrt(2) when an outcome lands outside
  // the expected range.
  double dagger = phase.scale;
  if (max_sqrt_loss > dagger) dagger = std::sqrt(2.0) * max_sqrt_loss;
  rec.scale_dagger = dagger;

  rec.mixloss_value = eta_is_unbounded(phase.eta)
                          ? mixloss_limit(rec.weights, rec.expert_losses)
                          : mixloss(rec.weights, rec.expert_losses, phase.eta);

  state.round = rec.t;
  state.scale_dagger = dagger;
  for (std::size_t n = 0; n < predictions.size(); ++n)
    state.cumulative_losses[n] += rec.expert_losses[n];
  return {std::move(state), std::move(rec)};
}

inline std::vector<RoundRecord> run(const AggregatorConfig& config,
                                    const Stream& stream) {
  AggregatorState state = init(config);
  std::vector<RoundRecord> records;
  records.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    try {
      PredictPhase phase = predict(config, state, stream[i].predictions);
      auto [next, rec] =
          update(std::move(state), phase, stream[i].predictions,
                 stream[i].outcome);
      state = std::move(next);
      records.push_back(std::move(rec));
    } catch (const InputError& e) {
      throw InputError("round " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace ewagg

#endif
