#ifndef EWAGG_BASELINES_HPP
#define EWAGG_BASELINES_HPP

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "ewagg/aggregator.hpp"

// Reference aggregators for comparison runs. They reuse the two-phase
// round structure and RoundRecord shape so reporting is identical, but no
// regret guarantee is claimed for them; comparison runs report observed
// regret only.

namespace ewagg {

struct BaselineKind {
  enum class Tag { FixedBoundEw, FollowLeader, Uniform };
  Tag tag = Tag::Uniform;
  double bound = 0.0;  // FixedBoundEw only, must be > 0

  static BaselineKind fixed_bound_ew(double bound) {
    if (!(bound > 0.0)) throw ConfigError("fixed-ew bound must be > 0");
    return {Tag::FixedBoundEw, bound};
  }
  static BaselineKind follow_leader() { return {Tag::FollowLeader, 0.0}; }
  static BaselineKind uniform() { return {Tag::Uniform, 0.0}; }
};

struct BaselineStep {
  double eta = 0.0;
  std::vector<double> weights;
  PredictionVector aggregated;
};

inline BaselineStep baseline_step(const BaselineKind& kind,
                                  std::span<const double> cumulative_losses,
                                  std::span<const PredictionVector> predictions) {
  if (cumulative_losses.size() != predictions.size())
    throw InputError("baseline_step: loss/prediction count mismatch");
  BaselineStep step;
  const std::size_t n_experts = predictions.size();
  switch (kind.tag) {
    case BaselineKind::Tag::FixedBoundEw:
      step.eta = 1.0 / (2.0 * kind.bound * kind.bound);
      step.weights = weights_from_losses(cumulative_losses, step.eta);
      break;
    case BaselineKind::Tag::FollowLeader: {
      // one-hot on argmin L, ties to the lowest expert index
      step.eta = kUnboundedEta;
      const auto it = std::min_element(cumulative_losses.begin(),
                                       cumulative_losses.end());
      step.weights.assign(n_experts, 0.0);
      step.weights[static_cast<std::size_t>(
          std::distance(cumulative_losses.begin(), it))] = 1.0;
      break;
    }
    case BaselineKind::Tag::Uniform:
      step.eta = kUnboundedEta;
      step.weights.assign(n_experts, 1.0 / static_cast<double>(n_experts));
      break;
  }
  step.aggregated = convex_combine(step.weights, predictions);
  return step;
}

inline std::vector<RoundRecord> run_baseline(const BaselineKind& kind,
                                             const AggregatorConfig& config,
                                             const Stream& stream) {
  AggregatorState state = init(config);
  std::vector<RoundRecord> records;
  records.reserve(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    try {
      detail::check_predictions(config, stream[i].predictions);
      BaselineStep step =
          baseline_step(kind, state.cumulative_losses, stream[i].predictions);
      PredictPhase phase;
      phase.scale = kind.tag == BaselineKind::Tag::FixedBoundEw
                        ? kind.bound
                        : max_pairwise_distance(stream[i].predictions);
      phase.eta = step.eta;
      phase.weights = std::move(step.weights);
      phase.aggregated = std::move(step.aggregated);
      auto [next, rec] = update(std::move(state), phase, stream[i].predictions,
                                stream[i].outcome);
      // Baselines carry no escalating scale; keep the record's dagger at
      // the phase scale and the state unchanged in that field.
      rec.scale_dagger = phase.scale;
      next.scale_dagger = 0.0;
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
