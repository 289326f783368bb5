#pragma once

#include "bsb/bench.hpp"
#include "bsb/cost.hpp"
#include "bsb/csv.hpp"
#include "bsb/demand.hpp"
#include "bsb/errors.hpp"
#include "bsb/keyspace.hpp"
#include "bsb/matrix.hpp"
#include "bsb/ntc.hpp"
#include "bsb/rng.hpp"
#include "bsb/routing.hpp"
#include "bsb/topology.hpp"
#include "bsb/trace.hpp"
#include "bsb/zipf.hpp"

#define BSB_VERSION "1.0.0"
