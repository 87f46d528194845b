#pragma once

// Umbrella header.

#include "duality/consistency.hpp"
#include "duality/decompose.hpp"
#include "duality/interferometer.hpp"
#include "duality/landscape.hpp"
#include "duality/measurement.hpp"
#include "duality/qubit.hpp"
#include "duality/rng.hpp"
#include "duality/sweep.hpp"
#include "duality/version.hpp"
