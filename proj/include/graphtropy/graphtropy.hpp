#pragma once

// Umbrella header for the graphtropy library.

#include "graphtropy/algo_info.hpp"
#include "graphtropy/automorphism.hpp"
#include "graphtropy/ddg.hpp"
#include "graphtropy/distribution.hpp"
#include "graphtropy/error.hpp"
#include "graphtropy/graph.hpp"
#include "graphtropy/interval.hpp"
#include "graphtropy/json_io.hpp"
#include "graphtropy/observer_sim.hpp"
#include "graphtropy/quantum.hpp"
#include "graphtropy/rational.hpp"
#include "graphtropy/rng.hpp"
#include "graphtropy/thermo.hpp"
#include "graphtropy/weighted.hpp"
