#pragma once

#include "decaylab/boosted.hpp"
#include "decaylab/curve.hpp"
#include "decaylab/kinematics.hpp"
#include "decaylab/oracle.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/restframe.hpp"
#include "decaylab/specfun.hpp"
#include "decaylab/timemap.hpp"
#include "decaylab/version.hpp"
#include "decaylab/window.hpp"
