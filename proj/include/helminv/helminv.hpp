#pragma once

#include "boundary.hpp"
#include "combinatorics.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "grid.hpp"
#include "helmholtz.hpp"
#include "inversion.hpp"
#include "io.hpp"
#include "measurement.hpp"
#include "spectral.hpp"
#include "verify.hpp"
#include "wavevectors.hpp"
