// Acceptance suite: one line per criterion, non-zero exit if any fails or
// exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sketch2manga/color.hpp"
#include "sketch2manga/external_generator.hpp"
#include "sketch2manga/pipeline.hpp"
#include "sketch2manga/png_io.hpp"
#include "sketch2manga/scaling.hpp"
#include "sketch2manga/segmentation.hpp"
#include "sketch2manga/toner.hpp"
#include "test_util.hpp"

using namespace sketch2manga;
namespace fs = std::filesystem;

namespace {

// Checksum of the bundled sample under the default configuration (seed 1).
constexpr std::uint64_t kGoldenSampleChecksum = 0x2607c7f1365418ceull;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// 1 ------------------------------------------------------------------------
Outcome scaling_formula_exactness() {
  struct Case {
    double sigma, low, high;
  };
  const Case cases[] = {{0.0, 1.0, 1.0}, {0.1, 0.992, 1.016}, {0.25, 0.98, 1.04}, {0.5, 0.96, 1.08}};
  const ScalingParams defaults;
  double worst = 0.0;
  for (const auto& c : cases) {
    const ScalingRange r = scaling_range(c.sigma, defaults);
    worst = std::max({worst, std::abs(r.low - c.low), std::abs(r.high - c.high)});
  }
  return {worst <= 1e-12, fmt("max |error| = %.3g (tolerance 1e-12)", worst)};
}

// 2 ------------------------------------------------------------------------
Outcome interpolation_boundary_law() {
  std::mt19937_64 rng(2024);
  constexpr int kTuples = 20000;
  constexpr int kSamples = 16;
  int violations = 0;
  for (int t = 0; t < kTuples; ++t) {
    double lo = uniform(rng), hi = uniform(rng);
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    RegionStats stats;
    stats.pixel_count = 100;
    stats.min_ir = lo;
    stats.max_ir = hi;
    stats.sigma = 0.5 * uniform(rng);
    ScalingParams params;
    if (t % 2 == 1) {
      params.w_low = uniform(rng);
      params.w_high = uniform(rng);
    }
    const ScalingRange range = scaling_range(stats.sigma, params);

    bool ok = pixel_scale(lo, stats, range) == range.high &&
              pixel_scale(hi, stats, range) == range.low && range.low <= 1.0 &&
              range.high >= 1.0;
    std::vector<double> irs(kSamples);
    for (auto& v : irs) v = lo + (hi - lo) * uniform(rng);
    std::sort(irs.begin(), irs.end());
    double previous = range.high;
    for (double ir : irs) {
      const double s = pixel_scale(ir, stats, range);
      ok = ok && s <= previous && s >= range.low && s <= range.high;
      previous = s;
    }
    violations += ok ? 0 : 1;
  }
  return {violations == 0, fmt("%d tuples x %d samples, %d violations", kTuples, kSamples,
                               violations)};
}

// 3 ------------------------------------------------------------------------
struct Scene {
  ColorImage image;
  LabelMap regions;
};

Scene make_scene(std::mt19937_64& rng, int w, int h, int blocks, int k) {
  Scene s;
  s.image = testing::blocky_image(w, h, blocks, rng);
  KMeansOptions o;
  o.k = k;
  o.seed = rng();
  s.regions = split_connected(kmeans_colors(s.image, o).clusters);
  return s;
}

int max_channel_diff(const ColorImage& a, const ColorImage& b) {
  int worst = 0;
  for (std::size_t i = 0; i < a.bytes().size(); ++i) {
    worst = std::max(worst, std::abs(int(a.bytes()[i]) - int(b.bytes()[i])));
  }
  return worst;
}

Outcome identity_suite() {
  std::mt19937_64 rng(33);
  int worst = 0;
  int scaled_regions = 0;
  for (int n = 0; n < 10; ++n) {
    const int w = 16 + static_cast<int>(rng() % 49);
    const int h = 16 + static_cast<int>(rng() % 49);
    const Scene s = make_scene(rng, w, h, 2 + n % 4, 6);

    // Rough image constant within each region: every sigma is zero.
    IntensityMap per_region(w, h);
    std::vector<double> level(s.regions.count());
    for (auto& v : level) v = static_cast<double>(rng() % 256) / 255.0;
    for (std::size_t i = 0; i < s.regions.pixel_count(); ++i) {
      per_region[i] = level[static_cast<std::size_t>(s.regions[i])];
    }
    const auto zero_sigma = region_stats(s.regions, per_region, &s.image);
    worst = std::max(worst, max_channel_diff(s.image, adaptive_scale(s.image, per_region,
                                                                     s.regions, zero_sigma, {})));

    // Zero weights with a screentoned rough image.
    const IntensityMap rough = synthesize(to_intensity(s.image), PatternSpec{});
    const auto stats = region_stats(s.regions, rough, &s.image);
    ScalingParams zero;
    zero.w_low = zero.w_high = 0.0;
    worst = std::max(worst,
                     max_channel_diff(s.image, adaptive_scale(s.image, rough, s.regions, stats, zero)));

    // Constant rough map.
    const IntensityMap flat(w, h, static_cast<double>(rng() % 256) / 255.0);
    const auto flat_stats = region_stats(s.regions, flat, &s.image);
    worst = std::max(worst, max_channel_diff(s.image, adaptive_scale(s.image, flat, s.regions,
                                                                     flat_stats, {})));
    for (const auto& st : stats) scaled_regions += st.sigma > 0 ? 1 : 0;
  }
  return {worst <= 1, fmt("10 images x 3 conditions, max channel deviation %d/255 (limit 1/255); "
                          "%d regions carried screentone signal in the zero-weight case",
                          worst, scaled_regions)};
}

// 4 ------------------------------------------------------------------------
Outcome oracle_equivalence() {
  std::mt19937_64 rng(44);
  int mismatches = 0;
  std::size_t changed_pixels = 0;
  for (int n = 0; n < 50; ++n) {
    const int w = 4 + static_cast<int>(rng() % 29);
    const int h = 4 + static_cast<int>(rng() % 29);
    const Scene s = make_scene(rng, w, h, 1 + static_cast<int>(rng() % 4), 2 + n % 6);
    const IntensityMap rough = n % 2 == 0 ? testing::random_intensity(w, h, rng)
                                          : synthesize(to_intensity(s.image), PatternSpec{});
    ScalingParams params;
    if (n % 5 == 4) params.channel = ScaleChannel::kLightness;
    const auto stats = region_stats(s.regions, rough, &s.image);
    const ColorImage fast = adaptive_scale(s.image, rough, s.regions, stats, params, 4);
    const ColorImage naive = oracle::naive_adaptive_scale(s.image, rough, s.regions, params);
    mismatches += fast == naive ? 0 : 1;
    for (std::size_t i = 0; i < fast.pixel_count(); ++i) {
      changed_pixels += fast.pixel(i) == s.image.pixel(i) ? 0 : 1;
    }
  }
  return {mismatches == 0 && changed_pixels > 0,
          fmt("50 images, %d mismatching, %zu pixels modified by scaling", mismatches,
              changed_pixels)};
}

// 5 ------------------------------------------------------------------------
Outcome halftone_tone_fidelity() {
  PatternSpec bayer;
  bayer.family = PatternFamily::kBayer;
  bayer.bayer_order = 8;
  bayer.black_point = 0.0;
  bayer.white_point = 1.0;
  int bad_tiles = 0;
  for (int k = 0; k <= 64; ++k) {
    const double v = k / 64.0;
    const IntensityMap out = synthesize(IntensityMap(32, 32, v), bayer);
    for (int ty = 0; ty < 32; ty += 8) {
      for (int tx = 0; tx < 32; tx += 8) {
        int black = 0;
        for (int y = ty; y < ty + 8; ++y)
          for (int x = tx; x < tx + 8; ++x) black += out.at(x, y) == 0.0 ? 1 : 0;
        bad_tiles += black == 64 - k ? 0 : 1;
      }
    }
  }

  int monotonic_failures = 0;
  for (auto family : {PatternFamily::kDot, PatternFamily::kLine}) {
    for (double angle : {0.0, 22.5, 45.0, 75.0}) {
      PatternSpec spec;
      spec.family = family;
      spec.angle = angle;
      double previous = 2.0;
      for (int level = 0; level <= 64; ++level) {
        const IntensityMap out = synthesize(IntensityMap(64, 64, level / 64.0), spec);
        const double coverage = testing::black_coverage(out, 0, 0, 64, 64);
        monotonic_failures += coverage <= previous ? 0 : 1;
        previous = coverage;
      }
      monotonic_failures += previous == 0.0 ? 0 : 1;
    }
  }
  return {bad_tiles == 0 && monotonic_failures == 0,
          fmt("bayer: 65 levels x 16 tiles, %d tiles off the quantized fraction; dot/line: "
              "65 levels x 4 angles, %d monotonicity failures",
              bad_tiles, monotonic_failures)};
}

// 6 ------------------------------------------------------------------------
Outcome screentone_imprint() {
  constexpr int kSize = 64;
  constexpr int kOrder = 8;
  const ColorImage red(kSize, kSize, Rgb{255, 0, 0});
  PatternSpec bayer;
  bayer.bayer_order = kOrder;
  bayer.black_point = 0.0;
  bayer.white_point = 1.0;
  const IntensityMap rough = synthesize(IntensityMap(kSize, kSize, 0.5), bayer);

  KMeansOptions o;
  o.k = 8;
  const LabelMap regions = split_connected(kmeans_colors(red, o).clusters);
  const auto stats = region_stats(regions, rough, &red);
  const ColorImage scaled = adaptive_scale(red, rough, regions, stats, {});
  const IntensityMap final_manga = compose_final(scaled, rough, {});

  double darkest_under_white = 1.0, brightest_under_black = 0.0;
  for (std::size_t i = 0; i < rough.pixel_count(); ++i) {
    if (rough[i] == 0.0) {
      brightest_under_black = std::max(brightest_under_black, final_manga[i]);
    } else {
      darkest_under_white = std::min(darkest_under_white, final_manga[i]);
    }
  }
  const bool ordered = brightest_under_black < darkest_under_white;

  const std::vector<double> mag = oracle::dft_magnitude(final_manga);
  const int lattice = kSize / kOrder;  // harmonics of the dither tile frequency
  std::size_t peak = 1;
  double off_lattice_max = 0.0;
  for (std::size_t i = 1; i < mag.size(); ++i) {
    if (mag[i] > mag[peak]) peak = i;
    const int u = static_cast<int>(i % kSize), v = static_cast<int>(i / kSize);
    if (u % lattice != 0 || v % lattice != 0) off_lattice_max = std::max(off_lattice_max, mag[i]);
  }
  const int pu = static_cast<int>(peak % kSize), pv = static_cast<int>(peak / kSize);
  const bool on_lattice = pu % lattice == 0 && pv % lattice == 0;
  const bool dominant = mag[peak] > 10.0 * off_lattice_max;

  return {ordered && on_lattice && dominant && regions.count() == 1,
          fmt("under-black max %.4f < under-white min %.4f; spectral peak at (%d, %d)/%d "
              "cycles/px (tile harmonic lattice step %d), |F| = %.2f vs off-lattice max %.2g",
              brightest_under_black, darkest_under_white, pu, pv, kSize, lattice, mag[peak],
              off_lattice_max)};
}

// 7 ------------------------------------------------------------------------
ColorImage separable_instance(std::mt19937_64& rng, int k, int n) {
  std::vector<std::array<double, 3>> centers;
  while (static_cast<int>(centers.size()) < k) {
    std::array<double, 3> c{20 + 215 * uniform(rng), 20 + 215 * uniform(rng),
                            20 + 215 * uniform(rng)};
    bool far = true;
    for (const auto& o : centers) {
      const double d = std::hypot(c[0] - o[0], c[1] - o[1], c[2] - o[2]);
      far = far && d >= 120.0;
    }
    if (far) centers.push_back(c);
  }
  int w = n, h = 1;
  for (int cand = 4; cand >= 2; --cand) {
    if (n % cand == 0) {
      w = n / cand;
      h = cand;
      break;
    }
  }
  ColorImage img(w, h);
  std::vector<int> owner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) owner[static_cast<std::size_t>(i)] = i % k;
  std::shuffle(owner.begin(), owner.end(), rng);
  for (int i = 0; i < n; ++i) {
    const auto& c = centers[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])];
    auto jitter = [&](double base) {
      return static_cast<std::uint8_t>(std::clamp(std::lround(base + 14 * uniform(rng) - 7), 0L, 255L));
    };
    img.set_pixel(static_cast<std::size_t>(i), {jitter(c[0]), jitter(c[1]), jitter(c[2])});
  }

  // Check the separation premise on the generated points.
  double max_diameter = 0.0, min_gap = 1e9;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Rgb a = img.pixel(static_cast<std::size_t>(i)), b = img.pixel(static_cast<std::size_t>(j));
      const double d = std::hypot(a.r - b.r, a.g - b.g, a.b - b.b);
      if (owner[static_cast<std::size_t>(i)] == owner[static_cast<std::size_t>(j)]) {
        max_diameter = std::max(max_diameter, d);
      } else {
        min_gap = std::min(min_gap, d);
      }
    }
  }
  if (min_gap < 2.0 * max_diameter) throw std::logic_error("instance not separable");
  return img;
}

Outcome kmeans_small_instance_optimality() {
  std::mt19937_64 rng(77);
  int failures = 0;
  std::ostringstream sizes;
  for (int t = 0; t < 20; ++t) {
    const int k = 2 + t % 2;
    const int n = 6 + static_cast<int>(rng() % 11);
    const ColorImage img = separable_instance(rng, k, n);
    const double optimum = oracle::brute_force_min_sse(img, k);
    KMeansOptions o;
    o.k = k;
    o.seed = static_cast<std::uint64_t>(t) + 1;
    const double got = partition_sse(img, kmeans_colors(img, o).clusters);
    failures += std::abs(got - optimum) <= 1e-9 * std::max(1.0, optimum) ? 0 : 1;
  }
  return {failures == 0, fmt("20 instances (6-16 px, k in {2,3}), %d above the exhaustive optimum",
                             failures)};
}

// 8 ------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome end_to_end_determinism() {
  TempDir tmp("s2m-acceptance");
  PipelineConfig config;
  config.input_path = testing::sample_path();
  config.output_path = tmp.path() / "single.png";
  config.threads = 1;
  const RunReport single = run_pipeline(config);

  config.output_path = tmp.path() / "multi.png";
  config.threads = 4;
  const RunReport multi = run_pipeline(config);

  const bool identical = slurp(tmp.path() / "single.png") == slurp(tmp.path() / "multi.png");
  const bool golden = single.checksum == kGoldenSampleChecksum;
  return {identical && golden && single.checksum == multi.checksum,
          fmt("checksum %s (1 thread) / %s (4 threads), golden %s, files %s",
              checksum_hex(single.checksum).c_str(), checksum_hex(multi.checksum).c_str(),
              checksum_hex(kGoldenSampleChecksum).c_str(), identical ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "scaling-formula exactness", 1.0, scaling_formula_exactness},
      {2, "interpolation boundary law", 5.0, interpolation_boundary_law},
      {3, "identity suite", 10.0, identity_suite},
      {4, "oracle equivalence", 30.0, oracle_equivalence},
      {5, "halftone tone fidelity", 10.0, halftone_tone_fidelity},
      {6, "screentone imprint", 5.0, screentone_imprint},
      {7, "k-means small-instance optimality", 30.0, kmeans_small_instance_optimality},
      {8, "end-to-end determinism", 10.0, end_to_end_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    failed += pass ? 0 : 1;
    std::printf("[%s] AC%d %-34s %7.3fs (budget %.0fs)  %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, seconds, c.budget_seconds, outcome.detail.c_str());
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
