#include "sketch2manga/toner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sketch2manga/error.hpp"
#include "sketch2manga/parallel.hpp"

namespace sketch2manga {

std::string_view to_string(PatternFamily family) noexcept {
  switch (family) {
    case PatternFamily::kDot: return "dot";
    case PatternFamily::kLine: return "line";
    case PatternFamily::kBayer: return "bayer";
    case PatternFamily::kThreshold: return "threshold";
  }
  return "unknown";
}

PatternFamily parse_pattern_family(std::string_view name) {
  if (name == "dot") return PatternFamily::kDot;
  if (name == "line") return PatternFamily::kLine;
  if (name == "bayer") return PatternFamily::kBayer;
  if (name == "threshold") return PatternFamily::kThreshold;
  throw ConfigError("unknown pattern '" + std::string(name) +
                    "' (expected dot, line, bayer or threshold)");
}

void validate(const PatternSpec& spec) {
  if (!(spec.frequency > 0.0 && spec.frequency <= 0.5)) {
    throw ConfigError("pattern frequency must be in (0, 0.5] cycles/pixel, got " +
                      std::to_string(spec.frequency));
  }
  if (!(spec.angle >= 0.0 && spec.angle < 180.0)) {
    throw ConfigError("pattern angle must be in [0, 180) degrees, got " +
                      std::to_string(spec.angle));
  }
  const int n = spec.bayer_order;
  if (n < 2 || n > 256 || (n & (n - 1)) != 0) {
    throw ConfigError("bayer order must be a power of two in [2, 256], got " +
                      std::to_string(n));
  }
  if (!(spec.black_point >= 0.0 && spec.white_point <= 1.0 &&
        spec.black_point < spec.white_point)) {
    throw ConfigError("black point and white point must satisfy 0 <= black < white <= 1");
  }
}

std::vector<int> bayer_matrix(int order) {
  if (order < 1 || (order & (order - 1)) != 0) {
    throw ConfigError("bayer order must be a power of two, got " + std::to_string(order));
  }
  std::vector<int> m{0};
  for (int n = 1; n < order; n *= 2) {
    const int size = 2 * n;
    std::vector<int> next(static_cast<std::size_t>(size * size));
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const int base = 4 * m[static_cast<std::size_t>(y * n + x)];
        next[static_cast<std::size_t>(y * size + x)] = base;
        next[static_cast<std::size_t>(y * size + x + n)] = base + 2;
        next[static_cast<std::size_t>((y + n) * size + x)] = base + 3;
        next[static_cast<std::size_t>((y + n) * size + x + n)] = base + 1;
      }
    }
    m = std::move(next);
  }
  return m;
}

namespace {

struct Rotation {
  double c = 1.0;
  double s = 0.0;
};

// Exact for multiples of 90 degrees so axis-aligned screens stay periodic.
Rotation rotation(double degrees) {
  if (degrees == 0.0) return {1.0, 0.0};
  if (degrees == 90.0) return {0.0, 1.0};
  const double rad = degrees * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

double wave(double cycles) {
  const double phase = cycles - std::floor(cycles);
  return std::sin(2.0 * std::numbers::pi * phase);
}

struct Field {
  const PatternSpec& spec;
  Rotation rot;
  std::vector<int> bayer;
  double bayer_scale = 1.0;

  explicit Field(const PatternSpec& s) : spec(s), rot(rotation(s.angle)) {
    if (spec.family == PatternFamily::kBayer) {
      bayer = bayer_matrix(spec.bayer_order);
      bayer_scale = 1.0 / static_cast<double>(spec.bayer_order * spec.bayer_order);
    }
  }

  double at(int x, int y) const noexcept {
    const double xc = x + 0.5;
    const double yc = y + 0.5;
    switch (spec.family) {
      case PatternFamily::kDot: {
        const double u = xc * rot.c + yc * rot.s;
        const double v = -xc * rot.s + yc * rot.c;
        return 0.5 + 0.5 * wave(spec.frequency * u) * wave(spec.frequency * v);
      }
      case PatternFamily::kLine: {
        const double u = xc * rot.c + yc * rot.s;
        return 0.5 + 0.5 * wave(spec.frequency * u);
      }
      case PatternFamily::kBayer: {
        const int n = spec.bayer_order;
        const int idx = bayer[static_cast<std::size_t>((y % n) * n + (x % n))];
        return (idx + 0.5) * bayer_scale;
      }
      case PatternFamily::kThreshold:
        return 0.5;
    }
    return 0.5;
  }
};

}  // namespace

double threshold_at(const PatternSpec& spec, int x, int y) noexcept {
  if (spec.family == PatternFamily::kBayer) {
    const int n = spec.bayer_order;
    if (n < 1 || (n & (n - 1)) != 0) return 0.5;
  }
  return Field(spec).at(x, y);
}

IntensityMap synthesize(const IntensityMap& intensity, const PatternSpec& spec,
                        std::size_t threads) {
  validate(spec);
  if (intensity.empty()) throw InvalidArgument("cannot halftone an empty intensity map");

  const Field field(spec);
  IntensityMap out(intensity.width(), intensity.height());
  auto values = out.values();
  const auto width = static_cast<std::size_t>(intensity.width());
  parallel_for(intensity.pixel_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double v = intensity[i];
      double result;
      if (v <= spec.black_point) {
        result = 0.0;
      } else if (v >= spec.white_point) {
        result = 1.0;
      } else {
        const int x = static_cast<int>(i % width);
        const int y = static_cast<int>(i / width);
        result = v < field.at(x, y) ? 0.0 : 1.0;
      }
      values[i] = result;
    }
  });
  return out;
}

}  // namespace sketch2manga
