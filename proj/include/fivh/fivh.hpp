#pragma once

// Umbrella header for the FIV multistable energy-harvester library.

#include "fivh/params.hpp"
#include "fivh/forces.hpp"
#include "fivh/equilibria.hpp"
#include "fivh/bifurcation.hpp"
#include "fivh/dynamics.hpp"
#include "fivh/limit_cycles.hpp"
#include "fivh/harmonic_balance.hpp"
#include "fivh/sweep.hpp"
#include "fivh/csv.hpp"
#include "fivh/config.hpp"
