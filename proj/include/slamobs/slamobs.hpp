#pragma once

#include "slamobs/pwcs.hpp"
#include "slamobs/slam_model.hpp"
#include "slamobs/analysis.hpp"
#include "slamobs/ekf_sim.hpp"
