#include <doctest.h>

#include <random>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"
#include "sketch2manga/external_generator.hpp"
#include "sketch2manga/png_io.hpp"
#include "test_util.hpp"

using namespace sketch2manga;

TEST_CASE("containers enforce their invariants") {
  CHECK_THROWS_AS(ColorImage(0, 4), InvalidArgument);
  CHECK_THROWS_AS(ColorImage(2, 2, std::vector<std::uint8_t>(11)), InvalidArgument);
  CHECK_THROWS_AS(IntensityMap(2, 1, std::vector<double>{0.5, 1.5}), InvalidArgument);
  CHECK_THROWS_AS(IntensityMap(2, 1, std::vector<double>{0.5, -0.1}), InvalidArgument);
  CHECK_NOTHROW(IntensityMap(2, 1, std::vector<double>{0.0, 1.0}));

  ColorImage img(3, 2, Rgb{1, 2, 3});
  CHECK(img.bytes().size() == 18);
  CHECK(img.at(2, 1) == Rgb{1, 2, 3});
}

TEST_CASE("to_intensity uses BT.601 luma") {
  CHECK(luma({255, 255, 255}) == 1.0);
  CHECK(luma({0, 0, 0}) == 0.0);
  CHECK(luma({255, 0, 0}) == 0.299);
  CHECK(luma({0, 255, 0}) == doctest::Approx(0.587).epsilon(1e-15));
  CHECK(luma({0, 0, 255}) == doctest::Approx(0.114).epsilon(1e-15));

  ColorImage img(2, 1);
  img.set(0, 0, {255, 0, 0});
  img.set(1, 0, {255, 255, 255});
  const IntensityMap m = to_intensity(img);
  CHECK(m.at(0, 0) == 0.299);
  CHECK(m.at(1, 0) == 1.0);
}

TEST_CASE("achromatic intensity equals channel / 255 exactly") {
  for (int c = 0; c < 256; ++c) {
    const auto v = static_cast<std::uint8_t>(c);
    CHECK(luma({v, v, v}) == c / 255.0);
  }
}

TEST_CASE("intensity is monotone in every channel") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    Rgb a{static_cast<std::uint8_t>(rng() & 0xFF), static_cast<std::uint8_t>(rng() & 0xFF),
          static_cast<std::uint8_t>(rng() & 0xFF)};
    Rgb b = a;
    const int ch = static_cast<int>(rng() % 3);
    std::uint8_t& slot = ch == 0 ? b.r : (ch == 1 ? b.g : b.b);
    slot = static_cast<std::uint8_t>(slot + (255 - slot) * (rng() % 100) / 100);
    REQUIRE(luma(b) >= luma(a));
  }
}

TEST_CASE("hsv conversion examples") {
  const Hsv red = rgb_to_hsv(Rgb{255, 0, 0});
  CHECK(red.h == 0.0);
  CHECK(red.s == 1.0);
  CHECK(red.v == 1.0);

  const Hsv gray = rgb_to_hsv(Rgb{128, 128, 128});
  CHECK(gray.s == 0.0);
  CHECK(gray.v == doctest::Approx(0.502).epsilon(1e-3));

  const Rgb green = hsv_to_rgb(Hsv{120.0, 0.5, 1.0});
  CHECK(std::abs(green.r - 128) <= 1);
  CHECK(green.g == 255);
  CHECK(std::abs(green.b - 128) <= 1);

  CHECK(rgb_to_hsv(Rgb{0, 0, 255}).h == 240.0);
  CHECK(rgb_to_hsv(Rgb{255, 0, 255}).h == 300.0);
}

TEST_CASE("rgb -> hsv -> rgb is exact-or-within-one over all 256^3 triples") {
  int worst = 0;
  for (int r = 0; r < 256; ++r) {
    for (int g = 0; g < 256; ++g) {
      for (int b = 0; b < 256; ++b) {
        const Rgb c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                    static_cast<std::uint8_t>(b)};
        const Rgb back = hsv_to_rgb(rgb_to_hsv(c));
        worst = std::max({worst, std::abs(back.r - r), std::abs(back.g - g),
                          std::abs(back.b - b)});
      }
    }
  }
  CHECK(worst <= 1);
}

TEST_CASE("hsv -> rgb -> hsv preserves S and V within 1/255") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    const Rgb c{static_cast<std::uint8_t>(rng() & 0xFF), static_cast<std::uint8_t>(rng() & 0xFF),
                static_cast<std::uint8_t>(rng() & 0xFF)};
    const Hsv a = rgb_to_hsv(c);
    const Hsv b = rgb_to_hsv(hsv_to_rgb(a));
    REQUIRE(std::abs(a.s - b.s) <= 1.0 / 255.0);
    REQUIRE(std::abs(a.v - b.v) <= 1.0 / 255.0);
  }
}

TEST_CASE("image-level hsv conversion matches per-pixel and is thread-invariant") {
  std::mt19937_64 rng(3);
  const ColorImage img = testing::random_image(97, 61, rng);
  const HsvImage one = rgb_to_hsv(img, 1);
  const HsvImage many = rgb_to_hsv(img, 4);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    REQUIRE(one[i].h == many[i].h);
    REQUIRE(one[i].s == many[i].s);
  }
  CHECK(hsv_to_rgb(one, 3) == img);
}

TEST_CASE("load_image decodes PNG variants") {
  const auto dir = testing::data_dir();

  SUBCASE("8-bit RGB") {
    const ColorImage img = load_image(dir / "rgb_2x2.png");
    REQUIRE(img.width() == 2);
    REQUIRE(img.height() == 2);
    CHECK(img.at(0, 0) == Rgb{0, 0, 0});
    CHECK(img.at(1, 0) == Rgb{255, 255, 255});
    CHECK(img.at(0, 1) == Rgb{255, 0, 0});
    CHECK(img.at(1, 1) == Rgb{0, 0, 255});
  }
  SUBCASE("grayscale is replicated") {
    const ColorImage img = load_image(dir / "gray_128.png");
    CHECK(img.width() == 2);
    CHECK(img.height() == 3);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) CHECK(img.pixel(i) == Rgb{128, 128, 128});
  }
  SUBCASE("alpha is composited over white") {
    // Pillow's alpha_composite over white gives (255, 127, 127).
    const Rgb c = load_image(dir / "rgba_red_128.png").at(0, 0);
    CHECK(c.r == 255);
    CHECK(std::abs(c.g - 127) <= 1);
    CHECK(std::abs(c.b - 127) <= 1);
  }
  SUBCASE("1-bit grayscale expands to 0/255") {
    const ColorImage img = load_image(dir / "bilevel_1bit.png");
    CHECK(img.at(0, 0) == Rgb{0, 0, 0});
    CHECK(img.at(1, 0) == Rgb{255, 255, 255});
  }
  SUBCASE("palette is expanded") {
    const ColorImage img = load_image(dir / "palette.png");
    CHECK(img.at(0, 0) == Rgb{10, 20, 30});
    CHECK(img.at(1, 0) == Rgb{200, 100, 50});
  }
}

TEST_CASE("load_image error paths") {
  const auto dir = testing::data_dir();
  CHECK_THROWS_AS(load_image(dir / "does_not_exist.png"), ImageIoError);
  CHECK_THROWS_AS(load_image(dir / "not_png.png"), ImageIoError);
  CHECK_THROWS_AS(load_image(dir / "truncated.png"), ImageIoError);
  CHECK_THROWS_WITH_AS(load_image(dir / "gray16.png"), doctest::Contains("bit depth 16"),
                       ImageIoError);
}

TEST_CASE("save_image round trips and quantizes") {
  TempDir tmp("s2m-test");
  std::mt19937_64 rng(5);

  const ColorImage img = testing::random_image(33, 17, rng);
  save_image(img, tmp.path() / "rgb.png");
  CHECK(load_image(tmp.path() / "rgb.png") == img);

  IntensityMap map(3, 1, std::vector<double>{0.5, 1.0, 0.0});
  save_image(map, tmp.path() / "gray.png");
  const ColorImage back = load_image(tmp.path() / "gray.png");
  CHECK(back.at(0, 0) == Rgb{128, 128, 128});
  CHECK(back.at(1, 0) == Rgb{255, 255, 255});
  CHECK(back.at(2, 0) == Rgb{0, 0, 0});

  // 8-bit intensity maps survive exactly.
  const IntensityMap exact = testing::random_intensity(20, 9, rng);
  save_image(exact, tmp.path() / "exact.png");
  CHECK(load_intensity(tmp.path() / "exact.png") == exact);

  CHECK_THROWS_AS(save_image(img, tmp.path() / "missing_dir" / "x.png"), ImageIoError);
}
