#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "sketch2manga/image.hpp"

namespace sketch2manga {

enum class PatternFamily { kDot, kLine, kBayer, kThreshold };

std::string_view to_string(PatternFamily family) noexcept;
/// Throws ConfigError on an unknown name.
PatternFamily parse_pattern_family(std::string_view name);

/// Screentone pattern for the built-in halftoner.
///
/// `frequency` (cycles per pixel) and `angle` (degrees) shape the dot and line
/// screens; `bayer_order` sizes the ordered-dither matrix. Intensities at or
/// below `black_point` become solid black and at or above `white_point` solid
/// white regardless of the pattern.
struct PatternSpec {
  PatternFamily family = PatternFamily::kBayer;
  double frequency = 0.125;
  double angle = 45.0;
  int bayer_order = 8;
  double black_point = 0.02;
  double white_point = 0.98;
};

/// Throws ConfigError naming the violated constraint.
void validate(const PatternSpec& spec);

/// Classic recursive Bayer index matrix, row-major, values 0..order^2-1.
std::vector<int> bayer_matrix(int order);

/// Threshold field value at pixel (x, y); sampled at pixel centers.
double threshold_at(const PatternSpec& spec, int x, int y) noexcept;

/// Binarizes `intensity` against the pattern's threshold field: 0 where the
/// intensity is below the threshold, 1 otherwise.
IntensityMap synthesize(const IntensityMap& intensity, const PatternSpec& spec,
                        std::size_t threads = 1);

}  // namespace sketch2manga
