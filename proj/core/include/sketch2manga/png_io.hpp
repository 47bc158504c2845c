#pragma once

#include <filesystem>

#include "sketch2manga/image.hpp"

namespace sketch2manga {

/// Decodes an 8-bit (or lower) PNG into RGB.
///
/// Grayscale is replicated across channels, palettes are expanded and any
/// alpha channel is composited over white. 16-bit images are rejected.
/// Throws ImageIoError.
ColorImage load_image(const std::filesystem::path& path);

/// Loads a PNG and converts it to intensities with to_intensity().
IntensityMap load_intensity(const std::filesystem::path& path);

/// Writes a lossless 8-bit RGB PNG.
void save_image(const ColorImage& img, const std::filesystem::path& path);

/// Writes a lossless 8-bit grayscale PNG, each value stored as round(v * 255).
void save_image(const IntensityMap& map, const std::filesystem::path& path);

}  // namespace sketch2manga
