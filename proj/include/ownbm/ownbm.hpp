#pragma once

// Online windowed non-bipartite matching: model, pipelines, oracle,
// generators and experiment harness. Header-only; include this to get
// everything.

#include "ownbm/common.hpp"
#include "ownbm/edge_weighted.hpp"
#include "ownbm/experiment.hpp"
#include "ownbm/generators.hpp"
#include "ownbm/instance.hpp"
#include "ownbm/io.hpp"
#include "ownbm/oracle.hpp"
#include "ownbm/report.hpp"
#include "ownbm/structures.hpp"
#include "ownbm/vertex_weighted.hpp"
