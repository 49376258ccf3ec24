#pragma once

#include "revsim/allocation.hpp"
#include "revsim/cli.hpp"
#include "revsim/config.hpp"
#include "revsim/domain.hpp"
#include "revsim/engine.hpp"
#include "revsim/event.hpp"
#include "revsim/log.hpp"
#include "revsim/metrics.hpp"
#include "revsim/policy.hpp"
#include "revsim/reaper.hpp"
#include "revsim/rng.hpp"
#include "revsim/sweep.hpp"
#include "revsim/time.hpp"
#include "revsim/util.hpp"
#include "revsim/workload.hpp"
