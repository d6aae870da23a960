#pragma once

#include "wkpyramid/address.hpp"
#include "wkpyramid/constructions.hpp"
#include "wkpyramid/errors.hpp"
#include "wkpyramid/exact.hpp"
#include "wkpyramid/invariants.hpp"
#include "wkpyramid/propagation.hpp"
#include "wkpyramid/serialize.hpp"
#include "wkpyramid/topology.hpp"
#include "wkpyramid/vertex_set.hpp"
