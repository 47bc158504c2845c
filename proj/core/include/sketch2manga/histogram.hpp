#pragma once

#include "sketch2manga/image.hpp"

namespace sketch2manga {

/// Monotone histogram specification on 256 bins.
///
/// Each source bin maps to the lowest reference bin whose cumulative share
/// reaches the source bin's cumulative share; the output value is the smallest
/// reference value inside that bin, so every output is drawn from `ref`.
/// Throws InvalidArgument if either map is empty.
IntensityMap match_histogram(const IntensityMap& src, const IntensityMap& ref);

}  // namespace sketch2manga
