#pragma once

// Umbrella header for the MH-BHM library.

#include "mhbhm/damage.hpp"
#include "mhbhm/errors.hpp"
#include "mhbhm/grid.hpp"
#include "mhbhm/inference.hpp"
#include "mhbhm/io.hpp"
#include "mhbhm/matern.hpp"
#include "mhbhm/predict.hpp"
#include "mhbhm/random_field.hpp"
#include "mhbhm/risk.hpp"
#include "mhbhm/rng.hpp"
#include "mhbhm/stats.hpp"
#include "mhbhm/synthetic.hpp"
#include "mhbhm/vulnerability.hpp"
