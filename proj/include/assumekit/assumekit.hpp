#pragma once

// Umbrella header.

#include "assumekit/benchgen.hpp"
#include "assumekit/error.hpp"
#include "assumekit/fair.hpp"
#include "assumekit/graph.hpp"
#include "assumekit/io.hpp"
#include "assumekit/objective.hpp"
#include "assumekit/pipeline.hpp"
#include "assumekit/safety.hpp"
#include "assumekit/scc.hpp"
#include "assumekit/solvers.hpp"
#include "assumekit/state_set.hpp"
#include "assumekit/stochastic.hpp"
#include "assumekit/strategy.hpp"
#include "assumekit/synthesis.hpp"
#include "assumekit/transducer.hpp"
