#pragma once

#include "tsplab/certificates.hpp"
#include "tsplab/common.hpp"
#include "tsplab/disjoint_set.hpp"
#include "tsplab/exact.hpp"
#include "tsplab/harness.hpp"
#include "tsplab/heuristics.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"
#include "tsplab/tsplib.hpp"
