// Umbrella header.
#pragma once

#include "divpoly/cone_algebra.hpp"
#include "divpoly/curve.hpp"
#include "divpoly/divisorial_polytope.hpp"
#include "divpoly/fan.hpp"
#include "divpoly/fansy.hpp"
#include "divpoly/json_io.hpp"
#include "divpoly/lattice.hpp"
#include "divpoly/pdiv.hpp"
#include "divpoly/polyhedron.hpp"
#include "divpoly/support_function.hpp"
#include "divpoly/svg.hpp"
