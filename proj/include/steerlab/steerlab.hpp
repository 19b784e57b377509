#pragma once

#include "steerlab/channel.hpp"
#include "steerlab/eig.hpp"
#include "steerlab/errors.hpp"
#include "steerlab/matrix.hpp"
#include "steerlab/measures.hpp"
#include "steerlab/optimize.hpp"
#include "steerlab/protocol.hpp"
#include "steerlab/qstate.hpp"
#include "steerlab/sweep.hpp"
