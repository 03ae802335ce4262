#ifndef EWAGG_EWAGG_HPP
#define EWAGG_EWAGG_HPP

#include "ewagg/aggregator.hpp"
#include "ewagg/baselines.hpp"
#include "ewagg/commands.hpp"
#include "ewagg/diagnostics.hpp"
#include "ewagg/mixloss.hpp"
#include "ewagg/run_log.hpp"
#include "ewagg/scenarios.hpp"
#include "ewagg/stream_io.hpp"
#include "ewagg/vector_space.hpp"

#endif
