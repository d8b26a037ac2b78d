// fran.hpp - Umbrella header for the delivery-time trade-off engine.
#pragma once

#include "fran/analysis.hpp"
#include "fran/bounds.hpp"
#include "fran/errors.hpp"
#include "fran/json_io.hpp"
#include "fran/model.hpp"
#include "fran/placement.hpp"
#include "fran/rational.hpp"
#include "fran/schedule.hpp"
#include "fran/schemes.hpp"
#include "fran/soft_transfer.hpp"
#include "fran/sweep.hpp"
