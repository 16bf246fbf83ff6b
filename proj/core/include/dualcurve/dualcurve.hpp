#pragma once

#include "dualcurve/body.hpp"
#include "dualcurve/direction.hpp"
#include "dualcurve/error.hpp"
#include "dualcurve/gauss_maps.hpp"
#include "dualcurve/io.hpp"
#include "dualcurve/measures.hpp"
#include "dualcurve/parallel.hpp"
#include "dualcurve/quadrature.hpp"
#include "dualcurve/sampling.hpp"
#include "dualcurve/solver.hpp"
#include "dualcurve/variational.hpp"
