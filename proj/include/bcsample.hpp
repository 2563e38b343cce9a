#pragma once

#include "bcsample/bench.hpp"
#include "bcsample/bfs.hpp"
#include "bcsample/brandes.hpp"
#include "bcsample/error.hpp"
#include "bcsample/estimate.hpp"
#include "bcsample/graph.hpp"
#include "bcsample/model.hpp"
#include "bcsample/model_check.hpp"
#include "bcsample/pair_sampler.hpp"
#include "bcsample/stats.hpp"
#include "bcsample/vertex_sampler.hpp"
