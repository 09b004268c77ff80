#pragma once

#include "nodal_stab/error.hpp"
#include "nodal_stab/rational.hpp"
#include "nodal_stab/curve.hpp"
#include "nodal_stab/twist.hpp"
#include "nodal_stab/semistability.hpp"
#include "nodal_stab/balancer.hpp"
#include "nodal_stab/field.hpp"
#include "nodal_stab/gpb.hpp"
#include "nodal_stab/truncated.hpp"
#include "nodal_stab/io.hpp"
