#pragma once

#include "graphcap/bitset.hpp"
#include "graphcap/delsarte.hpp"
#include "graphcap/error.hpp"
#include "graphcap/graph.hpp"
#include "graphcap/graph_spec.hpp"
#include "graphcap/greedy_code.hpp"
#include "graphcap/invariants.hpp"
#include "graphcap/rate_bounds.hpp"
#include "graphcap/rational.hpp"
#include "graphcap/sandwich.hpp"
#include "graphcap/serialize.hpp"
#include "graphcap/simplex.hpp"
#include "graphcap/spectral.hpp"
#include "graphcap/symmetry.hpp"
