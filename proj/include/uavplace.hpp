#pragma once

#include "uavplace/channel.hpp"
#include "uavplace/errors.hpp"
#include "uavplace/experiments.hpp"
#include "uavplace/geometry.hpp"
#include "uavplace/objective.hpp"
#include "uavplace/oracle.hpp"
#include "uavplace/random.hpp"
#include "uavplace/region.hpp"
#include "uavplace/scenario.hpp"
#include "uavplace/solver.hpp"
#include "uavplace/surface.hpp"
