#pragma once

#include "clusters.hpp"
#include "cost_eval.hpp"
#include "fluid_oracle.hpp"
#include "path_model.hpp"
#include "pwl.hpp"
#include "rational.hpp"
#include "regret_engine.hpp"
#include "scenario_gen.hpp"
#include "sink_tracker.hpp"
