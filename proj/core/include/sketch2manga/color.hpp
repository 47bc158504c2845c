#pragma once

#include <cstddef>

#include "sketch2manga/image.hpp"

namespace sketch2manga {

/// BT.601 luma normalized to [0, 1]. Achromatic pixels map to c / 255 exactly.
double luma(Rgb c) noexcept;

IntensityMap to_intensity(const ColorImage& img, std::size_t threads = 1);

Hsv rgb_to_hsv(Rgb c) noexcept;
/// Channels are rounded to nearest and clamped to [0, 255].
Rgb hsv_to_rgb(const Hsv& c) noexcept;

HsvImage rgb_to_hsv(const ColorImage& img, std::size_t threads = 1);
ColorImage hsv_to_rgb(const HsvImage& img, std::size_t threads = 1);

/// Renders an 8-bit grayscale ColorImage from an intensity map.
ColorImage to_color(const IntensityMap& map);

/// Quantization rule used wherever an intensity becomes a byte.
std::uint8_t quantize(double v) noexcept;

}  // namespace sketch2manga
