#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "sketch2manga/image.hpp"
#include "sketch2manga/segmentation.hpp"

namespace sketch2manga {

enum class ScaleChannel { kSaturation, kLightness };

std::string_view to_string(ScaleChannel channel) noexcept;
/// Throws ConfigError on an unknown name.
ScaleChannel parse_scale_channel(std::string_view name);

struct ScalingParams {
  double w_low = 0.08;
  double w_high = 0.16;
  ScaleChannel channel = ScaleChannel::kSaturation;
  bool histogram_match = false;
  /// Regions whose mean saturation is below this are scaled on lightness even
  /// in saturation mode.
  double low_sat_fallback = 0.1;
  /// Regions with fewer pixels are passed through unchanged.
  std::size_t min_region_pixels = 16;
};

/// Throws ConfigError naming the violated constraint.
void validate(const ScalingParams& params);

struct ScalingRange {
  double low = 1.0;
  double high = 1.0;
};

/// low = 1 - w_low * sigma (floored at 0), high = 1 + w_high * sigma.
ScalingRange scaling_range(double sigma, const ScalingParams& params) noexcept;

/// Linear interpolation from range.high at the region's darkest rough value
/// to range.low at its brightest. Degenerate regions (max == min) give 1.
double pixel_scale(double ir, const RegionStats& stats,
                   const ScalingRange& range) noexcept;

/// True when a region is left untouched: too small, or no rough-image spread.
bool is_pass_through(const RegionStats& stats, const ScalingParams& params) noexcept;

/// Multiplies each pixel's saturation (or HSV value, the lightness proxy) by
/// the factor interpolated from the rough image inside its region.
///
/// `stats` must hold one entry per label with region_id equal to its index.
/// Pixels whose factor is exactly 1 are copied through untouched. Throws
/// InvalidArgument on dimension mismatch or missing statistics.
ColorImage adaptive_scale(const ColorImage& illustration, const IntensityMap& rough,
                          const LabelMap& regions, const std::vector<RegionStats>& stats,
                          const ScalingParams& params, std::size_t threads = 1);

/// Final manga: grayscale of the scaled illustration, optionally histogram
/// matched to the rough image.
IntensityMap compose_final(const ColorImage& scaled, const IntensityMap& rough,
                           const ScalingParams& params, std::size_t threads = 1);

}  // namespace sketch2manga
