#pragma once

// Situation-coverage safety testing for a simulated survey drone: umbrella
// header pulling in the whole pipeline.

#include "sitcov/campaign.hpp"
#include "sitcov/config.hpp"
#include "sitcov/coverage.hpp"
#include "sitcov/drone.hpp"
#include "sitcov/fault.hpp"
#include "sitcov/geometry.hpp"
#include "sitcov/monitor.hpp"
#include "sitcov/rng.hpp"
#include "sitcov/scene.hpp"
#include "sitcov/sensor.hpp"
#include "sitcov/sim.hpp"
#include "sitcov/situation.hpp"
#include "sitcov/trajectory.hpp"
#include "sitcov/version.hpp"
