#pragma once

#include "sfma/rng.hpp"
#include "sfma/channel.hpp"
#include "sfma/interference.hpp"
#include "sfma/semantic_rate.hpp"
#include "sfma/pairing.hpp"
#include "sfma/scalar_search.hpp"
#include "sfma/power.hpp"
#include "sfma/solve.hpp"
#include "sfma/baselines.hpp"
#include "sfma/bench/config.hpp"
#include "sfma/bench/sweep.hpp"
#include "sfma/bench/csv.hpp"
