#include "sketch2manga/histogram.hpp"

#include <array>
#include <cstdint>
#include <limits>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"

namespace sketch2manga {

IntensityMap match_histogram(const IntensityMap& src, const IntensityMap& ref) {
  if (src.empty() || ref.empty()) {
    throw InvalidArgument("histogram matching needs non-empty source and reference");
  }
  constexpr std::size_t kBins = 256;

  std::array<std::uint64_t, kBins> src_cdf{};
  std::array<std::uint64_t, kBins> ref_cdf{};
  std::array<double, kBins> ref_value;
  ref_value.fill(std::numeric_limits<double>::infinity());

  for (double v : src.values()) ++src_cdf[quantize(v)];
  for (double v : ref.values()) {
    const auto b = quantize(v);
    ++ref_cdf[b];
    if (v < ref_value[b]) ref_value[b] = v;
  }
  for (std::size_t b = 1; b < kBins; ++b) {
    src_cdf[b] += src_cdf[b - 1];
    ref_cdf[b] += ref_cdf[b - 1];
  }

  // Cumulative shares are compared by cross-multiplication to stay exact.
  const std::uint64_t n_src = src.pixel_count();
  const std::uint64_t n_ref = ref.pixel_count();
  std::array<double, kBins> mapping{};
  std::size_t r = 0;
  for (std::size_t b = 0; b < kBins; ++b) {
    while (r + 1 < kBins && ref_cdf[r] * n_src < src_cdf[b] * n_ref) ++r;
    mapping[b] = ref_value[r];
  }

  IntensityMap out(src.width(), src.height());
  for (std::size_t i = 0; i < src.pixel_count(); ++i) out[i] = mapping[quantize(src[i])];
  return out;
}

}  // namespace sketch2manga
