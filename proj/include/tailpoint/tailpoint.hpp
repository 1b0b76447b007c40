#pragma once

// Convenience umbrella for the whole library.

#include "tailpoint/delimiting.hpp"
#include "tailpoint/distributions.hpp"
#include "tailpoint/kde.hpp"
#include "tailpoint/math/fd.hpp"
#include "tailpoint/math/quadrature.hpp"
#include "tailpoint/math/roots.hpp"
#include "tailpoint/math/special.hpp"
#include "tailpoint/parallel.hpp"
#include "tailpoint/rng.hpp"
#include "tailpoint/simulation.hpp"
#include "tailpoint/svg.hpp"
