#pragma once

#include "faslab/constructions.hpp"
#include "faslab/digraph.hpp"
#include "faslab/discrepancy.hpp"
#include "faslab/edge_list_io.hpp"
#include "faslab/errors.hpp"
#include "faslab/exact_oracle.hpp"
#include "faslab/greedy_fas.hpp"
#include "faslab/harness.hpp"
#include "faslab/matrix.hpp"
#include "faslab/numeric.hpp"
#include "faslab/quasirandom.hpp"
#include "faslab/rng.hpp"
#include "faslab/subgraph_count.hpp"
