#ifndef EWAGG_MIXLOSS_HPP
#define EWAGG_MIXLOSS_HPP

#include <cmath>
#include <limits>
#include <span>

#include "ewagg/errors.hpp"

namespace ewagg {

// Learning rate sentinel for the degenerate zero-diameter round where the
// exponential weighting degenerates to a hard argmin.
inline constexpr double kUnboundedEta = std::numeric_limits<double>::infinity();

inline bool eta_is_unbounded(double eta) { return std::isinf(eta); }

// Soft-minimum of the losses under the given weights:
//   m(eta) = -(1/eta) * ln sum_n w_n * exp(-eta * l_n)
// Evaluated with a min-loss shift so no finite eta*l over/underflows.
// Always lands in [min supported l, max supported l].
inline double mixloss(std::span<const double> weights,
                      std::span<const double> losses, double eta) {
  if (!(eta > 0.0) || eta_is_unbounded(eta))
    throw InvariantError("mixloss: eta must be positive and finite");
  if (weights.size() != losses.size())
    throw InvariantError("mixloss: weight/loss count mismatch");
  double lmin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < losses.size(); ++n) {
    if (weights[n] > 0.0) lmin = std::min(lmin, losses[n]);
  }
  double z = 0.0;
  for (std::size_t n = 0; n < losses.size(); ++n) {
    if (weights[n] > 0.0) z += weights[n] * std::exp(-eta * (losses[n] - lmin));
  }
  return lmin - std::log(z) / eta;
}

// Limit of mixloss(eta) as eta -> infinity: the smallest loss carrying
// positive weight.
inline double mixloss_limit(std::span<const double> weights,
                            std::span<const double> losses) {
  double lmin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < losses.size(); ++n) {
    if (weights[n] > 0.0) lmin = std::min(lmin, losses[n]);
  }
  return lmin;
}

}  // namespace ewagg

#endif
