// Umbrella header.
#pragma once

#include "hingefit/basis.hpp"
#include "hingefit/benchmarks.hpp"
#include "hingefit/config.hpp"
#include "hingefit/dataio.hpp"
#include "hingefit/dynamics.hpp"
#include "hingefit/errors.hpp"
#include "hingefit/regress.hpp"
#include "hingefit/sigproc.hpp"
#include "hingefit/timeseries.hpp"
