#pragma once

// Umbrella header.

#include "pursuit/errors.hpp"
#include "pursuit/experiment.hpp"
#include "pursuit/guarantees.hpp"
#include "pursuit/linalg.hpp"
#include "pursuit/matrix_io.hpp"
#include "pursuit/omp.hpp"
#include "pursuit/rng.hpp"
#include "pursuit/sensing.hpp"
#include "pursuit/tolerances.hpp"
