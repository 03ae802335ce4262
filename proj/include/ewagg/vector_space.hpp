#ifndef EWAGG_VECTOR_SPACE_HPP
#define EWAGG_VECTOR_SPACE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ewagg/errors.hpp"

// Finite-dimensional Hilbert-space kernel: norms, distances, pairwise
// diameters, convex combinations. All functions are pure; everything is
// 64-bit floating point.

namespace ewagg {

using PredictionVector = std::vector<double>;

// |sum(w) - 1| must stay within this to count as simplex weights.
inline constexpr double kSimplexTolerance = 1e-9;
// Weights below zero by at most this much are treated as float dust and
// clamped to zero; anything worse is an error.
inline constexpr double kWeightDust = 1e-12;

inline bool is_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

inline double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline double distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw ConfigError("distance: dimension mismatch (" +
                      std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()) + ")");
  double s = 0.0;
  for (std::size_t d = 0; d < u.size(); ++d) {
    const double diff = u[d] - v[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

// Exact maximum over all unordered pairs, O(N^2 * D). Zero for a single
// vector.
inline double max_pairwise_distance(std::span<const PredictionVector> vectors) {
  if (vectors.empty())
    throw InvariantError("max_pairwise_distance: empty sequence");
  double best = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      best = std::max(best, distance(vectors[i], vectors[j]));
    }
  }
  return best;
}

// Validates that `weights` lies on the probability simplex (within
// kSimplexTolerance) and returns a cleaned copy with negative dust
// clamped to zero.
inline std::vector<double> validate_simplex(std::span<const double> weights) {
  std::vector<double> w(weights.begin(), weights.end());
  double sum = 0.0;
  for (double& x : w) {
    if (!std::isfinite(x)) throw InvariantError("weights: non-finite entry");
    if (x < 0.0) {
      if (x < -kWeightDust)
        throw InvariantError("weights: negative entry " + std::to_string(x));
      x = 0.0;
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance)
    throw InvariantError("weights: sum " + std::to_string(sum) +
                         " is off the simplex");
  return w;
}

inline PredictionVector convex_combine(std::span<const double> weights,
                                       std::span<const PredictionVector> vectors) {
  if (weights.size() != vectors.size())
    throw InvariantError("convex_combine: weight/vector count mismatch");
  const std::vector<double> w = validate_simplex(weights);
  if (vectors.empty()) throw InvariantError("convex_combine: empty input");
  const std::size_t dim = vectors.front().size();
  PredictionVector out(dim, 0.0);
  for (std::size_t n = 0; n < vectors.size(); ++n) {
    if (vectors[n].size() != dim)
      throw ConfigError("convex_combine: dimension mismatch at index " +
                        std::to_string(n));
    for (std::size_t d = 0; d < dim; ++d) out[d] += w[n] * vectors[n][d];
  }
  return out;
}

}  // namespace ewagg

#endif
