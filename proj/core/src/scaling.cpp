#include "sketch2manga/scaling.hpp"

#include <algorithm>
#include <string>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"
#include "sketch2manga/histogram.hpp"
#include "sketch2manga/parallel.hpp"

namespace sketch2manga {

std::string_view to_string(ScaleChannel channel) noexcept {
  return channel == ScaleChannel::kSaturation ? "saturation" : "lightness";
}

ScaleChannel parse_scale_channel(std::string_view name) {
  if (name == "saturation" || name == "s" || name == "S") return ScaleChannel::kSaturation;
  if (name == "lightness" || name == "l" || name == "L") return ScaleChannel::kLightness;
  throw ConfigError("unknown channel '" + std::string(name) +
                    "' (expected saturation or lightness)");
}

void validate(const ScalingParams& params) {
  if (!(params.w_low >= 0.0)) {
    throw ConfigError("w_low must be a non-negative number, got " + std::to_string(params.w_low));
  }
  if (!(params.w_high >= 0.0)) {
    throw ConfigError("w_high must be a non-negative number, got " +
                      std::to_string(params.w_high));
  }
  if (!(params.low_sat_fallback >= 0.0 && params.low_sat_fallback <= 1.0)) {
    throw ConfigError("low_sat_fallback must be in [0, 1], got " +
                      std::to_string(params.low_sat_fallback));
  }
}

ScalingRange scaling_range(double sigma, const ScalingParams& params) noexcept {
  return {std::max(0.0, 1.0 - params.w_low * sigma), 1.0 + params.w_high * sigma};
}

double pixel_scale(double ir, const RegionStats& stats, const ScalingRange& range) noexcept {
  if (!(stats.max_ir > stats.min_ir)) return 1.0;
  const double t = (ir - stats.min_ir) / (stats.max_ir - stats.min_ir);
  if (t <= 0.0) return range.high;
  if (t >= 1.0) return range.low;
  return std::clamp(range.high - t * (range.high - range.low), range.low, range.high);
}

bool is_pass_through(const RegionStats& stats, const ScalingParams& params) noexcept {
  return stats.pixel_count < params.min_region_pixels || !(stats.max_ir > stats.min_ir);
}

namespace {

struct RegionPlan {
  ScalingRange range;
  bool pass_through = true;
  bool on_value = false;
};

}  // namespace

ColorImage adaptive_scale(const ColorImage& illustration, const IntensityMap& rough,
                          const LabelMap& regions, const std::vector<RegionStats>& stats,
                          const ScalingParams& params, std::size_t threads) {
  validate(params);
  if (!same_dimensions(illustration, rough) || !same_dimensions(illustration, regions)) {
    throw InvalidArgument("illustration, rough image and region map must share dimensions");
  }
  const std::size_t count = regions.count();
  for (std::size_t r = 0; r < count; ++r) {
    if (r >= stats.size() || stats[r].region_id != static_cast<std::int32_t>(r)) {
      throw InvalidArgument("missing statistics for region " + std::to_string(r));
    }
  }

  const HsvImage hsv = rgb_to_hsv(illustration, threads);

  std::vector<double> saturation_sum(count, 0.0);
  std::vector<std::size_t> pixels(count, 0);
  for (std::size_t i = 0; i < regions.pixel_count(); ++i) {
    const auto r = static_cast<std::size_t>(regions[i]);
    saturation_sum[r] += hsv[i].s;
    ++pixels[r];
  }

  std::vector<RegionPlan> plan(count);
  for (std::size_t r = 0; r < count; ++r) {
    plan[r].range = scaling_range(stats[r].sigma, params);
    plan[r].pass_through = is_pass_through(stats[r], params);
    const double mean_saturation = saturation_sum[r] / static_cast<double>(pixels[r]);
    plan[r].on_value = params.channel == ScaleChannel::kLightness ||
                       mean_saturation < params.low_sat_fallback;
  }

  ColorImage out = illustration;
  parallel_for(illustration.pixel_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = static_cast<std::size_t>(regions[i]);
      const RegionPlan& p = plan[r];
      if (p.pass_through) continue;
      const double s = pixel_scale(rough[i], stats[r], p.range);
      if (s == 1.0) continue;
      Hsv px = hsv[i];
      double& channel = p.on_value ? px.v : px.s;
      channel = std::clamp(channel * s, 0.0, 1.0);
      out.set_pixel(i, hsv_to_rgb(px));
    }
  });
  return out;
}

IntensityMap compose_final(const ColorImage& scaled, const IntensityMap& rough,
                           const ScalingParams& params, std::size_t threads) {
  IntensityMap gray = to_intensity(scaled, threads);
  if (!params.histogram_match) return gray;
  return match_histogram(gray, rough);
}

}  // namespace sketch2manga
