#pragma once

#include "linalg.hpp"
#include "oscillation.hpp"
#include "flavor_state.hpp"
#include "measures.hpp"
#include "tradeoff.hpp"
#include "config.hpp"
#include "sweep.hpp"
