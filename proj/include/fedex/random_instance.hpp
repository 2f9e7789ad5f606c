#pragma once

#include <random>

#include "fedex/instance.hpp"

namespace fedex {

// Small-denominator random instance: weights are integers in [0, weight_max]
// normalized per row, with at least one positive entry per row. Some rows get
// mass at value 0 and some days get q = 0.
FedexInstance random_instance(std::mt19937_64& rng, int n, int v_max, int weight_max = 6);

}  // namespace fedex
