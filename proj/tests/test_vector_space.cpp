#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ewagg/scenarios.hpp"
#include "ewagg/vector_space.hpp"

using namespace ewagg;

namespace {

PredictionVector random_vector(SplitMix64& rng, int dim, double span = 10.0) {
  PredictionVector v(static_cast<std::size_t>(dim));
  for (double& x : v) x = span * (2.0 * rng.next_double() - 1.0);
  return v;
}

}  // namespace

TEST_CASE("norm_sq basics") {
  CHECK(norm_sq(PredictionVector{0, 0, 0}) == 0.0);
  CHECK(norm_sq(PredictionVector{3, 4}) == 25.0);
  CHECK(norm_sq(PredictionVector{1, 1, 1, 1}) == 4.0);
}

TEST_CASE("distance basics") {
  CHECK(distance(PredictionVector{0}, PredictionVector{1}) == 1.0);
  CHECK(distance(PredictionVector{2, 5}, PredictionVector{2, 5}) == 0.0);
  CHECK(distance(PredictionVector{0, 0}, PredictionVector{3, 4}) == 5.0);
  CHECK_THROWS_AS(distance(PredictionVector{1}, PredictionVector{1, 2}),
                  ConfigError);
}

TEST_CASE("max_pairwise_distance") {
  std::vector<PredictionVector> single{{7, 7}};
  CHECK(max_pairwise_distance(single) == 0.0);

  // brute force over all pairs: distances are 5, 8, 5
  std::vector<PredictionVector> three{{0, 0}, {3, 4}, {0, 8}};
  CHECK(max_pairwise_distance(three) == doctest::Approx(8.0));

  std::vector<PredictionVector> pair{{0}, {1}};
  CHECK(max_pairwise_distance(pair) == doctest::Approx(1.0));

  std::vector<PredictionVector> empty;
  CHECK_THROWS_AS(max_pairwise_distance(empty), InvariantError);
}

TEST_CASE("convex_combine") {
  std::vector<PredictionVector> vs{{2, 2}, {9, 9}};
  auto one_hot = convex_combine(std::vector<double>{1, 0}, vs);
  CHECK(one_hot == PredictionVector{2, 2});

  std::vector<PredictionVector> vs2{{0, 0}, {2, 4}};
  auto mid = convex_combine(std::vector<double>{0.5, 0.5}, vs2);
  CHECK(mid[0] == doctest::Approx(1.0));
  CHECK(mid[1] == doctest::Approx(2.0));

  std::vector<PredictionVector> vs3{{4}, {0}, {2}};
  auto mix = convex_combine(std::vector<double>{0.25, 0.25, 0.5}, vs3);
  CHECK(mix[0] == doctest::Approx(2.0));
}

TEST_CASE("convex_combine rejects off-simplex weights, clamps dust") {
  std::vector<PredictionVector> vs{{1}, {2}};
  CHECK_THROWS_AS(convex_combine(std::vector<double>{0.6, 0.6}, vs),
                  InvariantError);
  CHECK_THROWS_AS(convex_combine(std::vector<double>{-0.1, 1.1}, vs),
                  InvariantError);
  // negative float dust is clamped
  auto v = convex_combine(std::vector<double>{-1e-13, 1.0}, vs);
  CHECK(v[0] == doctest::Approx(2.0));
}

TEST_CASE("triangle inequality, property") {
  SplitMix64 rng{12345};
  for (int i = 0; i < 200; ++i) {
    const int dim = 1 + static_cast<int>(rng.next() % 5);
    auto u = random_vector(rng, dim);
    auto v = random_vector(rng, dim);
    auto w = random_vector(rng, dim);
    CHECK(distance(u, w) <= distance(u, v) + distance(v, w) + 1e-12);
  }
}

TEST_CASE("norm_sq equals squared distance to origin") {
  SplitMix64 rng{99};
  for (int i = 0; i < 100; ++i) {
    auto v = random_vector(rng, 3);
    const double d = distance(v, PredictionVector{0, 0, 0});
    CHECK(norm_sq(v) == doctest::Approx(d * d).epsilon(1e-12));
  }
}

TEST_CASE("max_pairwise_distance is permutation- and translation-invariant") {
  SplitMix64 rng{777};
  for (int i = 0; i < 50; ++i) {
    std::vector<PredictionVector> vs;
    const int n = 2 + static_cast<int>(rng.next() % 4);
    for (int j = 0; j < n; ++j) vs.push_back(random_vector(rng, 2));
    const double base = max_pairwise_distance(vs);

    auto perm = vs;
    std::swap(perm.front(), perm.back());
    CHECK(max_pairwise_distance(perm) == doctest::Approx(base).epsilon(1e-12));

    auto shift = random_vector(rng, 2);
    auto moved = vs;
    for (auto& v : moved)
      for (std::size_t d = 0; d < v.size(); ++d) v[d] += shift[d];
    CHECK(max_pairwise_distance(moved) == doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("aggregated point is never farther from a target than the worst input") {
  SplitMix64 rng{31337};
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng.next() % 4);
    std::vector<PredictionVector> vs;
    for (int j = 0; j < n; ++j) vs.push_back(random_vector(rng, 3));
    auto target = random_vector(rng, 3);

    std::vector<double> w(static_cast<std::size_t>(n));
    double z = 0.0;
    for (double& x : w) {
      x = rng.next_double() + 1e-6;
      z += x;
    }
    for (double& x : w) x /= z;

    auto combined = convex_combine(w, vs);
    double worst = 0.0;
    for (const auto& v : vs) {
      const double d = distance(target, v);
      worst = std::max(worst, d * d);
    }
    const double dc = distance(target, combined);
    CHECK(dc * dc <= worst + 1e-9 * std::max(1.0, worst));
  }
}
