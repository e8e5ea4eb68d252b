#pragma once

#include "cardbalance/agents.hpp"
#include "cardbalance/arena.hpp"
#include "cardbalance/card_io.hpp"
#include "cardbalance/cards.hpp"
#include "cardbalance/engine.hpp"
#include "cardbalance/error.hpp"
#include "cardbalance/evolve.hpp"
#include "cardbalance/metrics.hpp"
#include "cardbalance/parallel.hpp"
#include "cardbalance/random.hpp"
