#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sketch2manga/image.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return TEST_DATA_DIR; }
inline std::filesystem::path sample_path() { return SAMPLE_ILLUSTRATION; }
inline std::string fake_generator(const std::string& mode) {
  return std::string("'") + FAKE_GENERATOR_PATH + "' " + mode + " {in} {out}";
}

inline sketch2manga::ColorImage random_image(int w, int h, std::mt19937_64& rng) {
  sketch2manga::ColorImage img(w, h);
  for (auto& b : img.bytes()) b = static_cast<std::uint8_t>(rng() & 0xFF);
  return img;
}

/// Piecewise-constant image of `blocks` x `blocks` random flat tiles with mild
/// per-pixel shading, so k-means yields large regions.
inline sketch2manga::ColorImage blocky_image(int w, int h, int blocks, std::mt19937_64& rng) {
  std::vector<sketch2manga::Rgb> palette(static_cast<std::size_t>(blocks * blocks));
  for (auto& c : palette) {
    c = {static_cast<std::uint8_t>(rng() & 0xFF), static_cast<std::uint8_t>(rng() & 0xFF),
         static_cast<std::uint8_t>(rng() & 0xFF)};
  }
  sketch2manga::ColorImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int bx = x * blocks / w;
      const int by = y * blocks / h;
      sketch2manga::Rgb c = palette[static_cast<std::size_t>(by * blocks + bx)];
      const int jitter = static_cast<int>(rng() % 5) - 2;
      auto shift = [&](std::uint8_t v) {
        return static_cast<std::uint8_t>(std::clamp(v + jitter, 0, 255));
      };
      img.set(x, y, {shift(c.r), shift(c.g), shift(c.b)});
    }
  }
  return img;
}

inline sketch2manga::IntensityMap random_intensity(int w, int h, std::mt19937_64& rng) {
  sketch2manga::IntensityMap map(w, h);
  for (auto& v : map.values()) v = static_cast<double>(rng() % 256) / 255.0;
  return map;
}

/// Fraction of zero-valued pixels in a w x h window at (x0, y0).
inline double black_coverage(const sketch2manga::IntensityMap& m, int x0, int y0, int w, int h) {
  int black = 0;
  for (int y = y0; y < y0 + h; ++y) {
    for (int x = x0; x < x0 + w; ++x) black += m.at(x, y) == 0.0 ? 1 : 0;
  }
  return static_cast<double>(black) / (w * h);
}

}  // namespace testing
