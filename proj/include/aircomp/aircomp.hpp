#pragma once

// Umbrella header for the whole library.

#include "aircomp/io.hpp"
#include "aircomp/mac_region.hpp"
#include "aircomp/model.hpp"
#include "aircomp/montecarlo.hpp"
#include "aircomp/multiantenna.hpp"
#include "aircomp/oracle.hpp"
#include "aircomp/policies.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/types.hpp"
