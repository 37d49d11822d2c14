#pragma once

#include "qtunnel/constants.hpp"
#include "qtunnel/delta_barrier.hpp"
#include "qtunnel/errors.hpp"
#include "qtunnel/kinematics.hpp"
#include "qtunnel/rect_barrier.hpp"
#include "qtunnel/resonance.hpp"
#include "qtunnel/singularity.hpp"
#include "qtunnel/transfer_matrix.hpp"
#include "qtunnel/uvw.hpp"
