#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sketch2manga {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Hexcone HSV. hue in [0, 360), saturation and value in [0, 1].
struct Hsv {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

/// Row-major interleaved 8-bit RGB raster.
class ColorImage {
 public:
  ColorImage() = default;
  /// Throws InvalidArgument unless width, height >= 1.
  ColorImage(int width, int height, Rgb fill = {});
  /// Adopts `data`; its size must be width * height * 3.
  ColorImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  bool empty() const noexcept { return data_.empty(); }

  Rgb at(int x, int y) const noexcept { return pixel(index(x, y)); }
  void set(int x, int y, Rgb c) noexcept { set_pixel(index(x, y), c); }

  Rgb pixel(std::size_t i) const noexcept {
    return {data_[3 * i], data_[3 * i + 1], data_[3 * i + 2]};
  }
  void set_pixel(std::size_t i, Rgb c) noexcept {
    data_[3 * i] = c.r;
    data_[3 * i + 1] = c.g;
    data_[3 * i + 2] = c.b;
  }

  std::span<const std::uint8_t> bytes() const noexcept { return data_; }
  std::span<std::uint8_t> bytes() noexcept { return data_; }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Single-channel raster of intensities in [0, 1].
///
/// Holds both the grayscale of an illustration and the rough screentoned
/// image produced by a generator.
class IntensityMap {
 public:
  IntensityMap() = default;
  IntensityMap(int width, int height, double fill = 0.0);
  /// Values are validated to lie in [0, 1].
  IntensityMap(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double at(int x, int y) const noexcept { return values_[index(x, y)]; }
  void set(int x, int y, double v) noexcept { values_[index(x, y)] = v; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  friend bool operator==(const IntensityMap&, const IntensityMap&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

class HsvImage {
 public:
  HsvImage() = default;
  HsvImage(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  const Hsv& operator[](std::size_t i) const noexcept { return pixels_[i]; }
  Hsv& operator[](std::size_t i) noexcept { return pixels_[i]; }
  std::span<const Hsv> pixels() const noexcept { return pixels_; }
  std::span<Hsv> pixels() noexcept { return pixels_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Hsv> pixels_;
};

template <typename A, typename B>
bool same_dimensions(const A& a, const B& b) noexcept {
  return a.width() == b.width() && a.height() == b.height();
}

}  // namespace sketch2manga
