#include "sketch2manga/image.hpp"

#include <string>

#include "sketch2manga/error.hpp"

namespace sketch2manga {
namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be at least 1x1, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

ColorImage::ColorImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  data_.resize(area(width, height) * 3);
  for (std::size_t i = 0; i < pixel_count(); ++i) set_pixel(i, fill);
}

ColorImage::ColorImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dimensions(width, height);
  if (data_.size() != area(width, height) * 3) {
    throw InvalidArgument("RGB buffer holds " + std::to_string(data_.size()) +
                          " bytes, expected " + std::to_string(area(width, height) * 3));
  }
}

IntensityMap::IntensityMap(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!(fill >= 0.0 && fill <= 1.0)) {
    throw InvalidArgument("intensity fill value outside [0, 1]");
  }
  values_.assign(area(width, height), fill);
}

IntensityMap::IntensityMap(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dimensions(width, height);
  if (values_.size() != area(width, height)) {
    throw InvalidArgument("intensity buffer holds " + std::to_string(values_.size()) +
                          " values, expected " + std::to_string(area(width, height)));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("intensity value " + std::to_string(v) + " outside [0, 1]");
    }
  }
}

HsvImage::HsvImage(int width, int height) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.resize(area(width, height));
}

}  // namespace sketch2manga
