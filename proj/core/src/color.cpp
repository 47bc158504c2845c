#include "sketch2manga/color.hpp"

#include <algorithm>
#include <cmath>

#include "sketch2manga/parallel.hpp"

namespace sketch2manga {

double luma(Rgb c) noexcept {
  // Integer weights keep the sum exact, so gray pixels give exactly c / 255.
  const int weighted = 299 * c.r + 587 * c.g + 114 * c.b;
  return std::clamp(static_cast<double>(weighted) / 255000.0, 0.0, 1.0);
}

std::uint8_t quantize(double v) noexcept {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

IntensityMap to_intensity(const ColorImage& img, std::size_t threads) {
  IntensityMap out(img.width(), img.height());
  auto values = out.values();
  parallel_for(img.pixel_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = luma(img.pixel(i));
  });
  return out;
}

Hsv rgb_to_hsv(Rgb c) noexcept {
  const int mx = std::max({c.r, c.g, c.b});
  const int mn = std::min({c.r, c.g, c.b});
  const double delta = mx - mn;

  Hsv out;
  out.v = mx / 255.0;
  out.s = mx == 0 ? 0.0 : delta / mx;
  if (delta == 0) return out;

  double h;
  if (mx == c.r) {
    h = 60.0 * ((c.g - c.b) / delta);
  } else if (mx == c.g) {
    h = 60.0 * ((c.b - c.r) / delta + 2.0);
  } else {
    h = 60.0 * ((c.r - c.g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

Rgb hsv_to_rgb(const Hsv& c) noexcept {
  const double v = std::clamp(c.v, 0.0, 1.0);
  const double s = std::clamp(c.s, 0.0, 1.0);
  double r = v, g = v, b = v;
  if (s > 0.0) {
    double h = std::fmod(c.h, 360.0);
    if (h < 0.0) h += 360.0;
    const double sector = h / 60.0;
    const int i = static_cast<int>(std::floor(sector)) % 6;
    const double f = sector - std::floor(sector);
    const double p = v * (1.0 - s);
    const double q = v * (1.0 - s * f);
    const double t = v * (1.0 - s * (1.0 - f));
    switch (i) {
      case 0: r = v; g = t; b = p; break;
      case 1: r = q; g = v; b = p; break;
      case 2: r = p; g = v; b = t; break;
      case 3: r = p; g = q; b = v; break;
      case 4: r = t; g = p; b = v; break;
      default: r = v; g = p; b = q; break;
    }
  }
  return {quantize(r), quantize(g), quantize(b)};
}

HsvImage rgb_to_hsv(const ColorImage& img, std::size_t threads) {
  HsvImage out(img.width(), img.height());
  auto pixels = out.pixels();
  parallel_for(img.pixel_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) pixels[i] = rgb_to_hsv(img.pixel(i));
  });
  return out;
}

ColorImage hsv_to_rgb(const HsvImage& img, std::size_t threads) {
  ColorImage out(img.width(), img.height());
  parallel_for(img.pixel_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out.set_pixel(i, hsv_to_rgb(img[i]));
  });
  return out;
}

ColorImage to_color(const IntensityMap& map) {
  ColorImage out(map.width(), map.height());
  for (std::size_t i = 0; i < map.pixel_count(); ++i) {
    const std::uint8_t q = quantize(map[i]);
    out.set_pixel(i, {q, q, q});
  }
  return out;
}

}  // namespace sketch2manga
