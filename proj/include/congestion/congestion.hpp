#pragma once

#include "congestion/bounds.hpp"
#include "congestion/clustering.hpp"
#include "congestion/contraction.hpp"
#include "congestion/error.hpp"
#include "congestion/experiment.hpp"
#include "congestion/generators.hpp"
#include "congestion/graph.hpp"
#include "congestion/spectra.hpp"
