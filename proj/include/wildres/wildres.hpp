#pragma once

// Umbrella header: exact-arithmetic resolution graphs of normal models of
// the projective line over discretely valued fields.

#include "classification.hpp"
#include "contfrac.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "maclane.hpp"
#include "npath.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "resolution.hpp"
