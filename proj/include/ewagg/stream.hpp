#ifndef EWAGG_STREAM_HPP
#define EWAGG_STREAM_HPP

#include <vector>

#include "ewagg/vector_space.hpp"

namespace ewagg {

// One round of the game: N expert predictions plus the outcome nature
// reveals after the player commits.
struct Round {
  std::vector<PredictionVector> predictions;
  PredictionVector outcome;
};

using Stream = std::vector<Round>;

}  // namespace ewagg

#endif
