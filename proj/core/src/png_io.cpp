#include "sketch2manga/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"

namespace sketch2manga {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng reports errors through longjmp; the message is parked here first.
struct ErrorContext {
  char message[256] = {};
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* ctx = static_cast<ErrorContext*>(png_get_error_ptr(png));
  if (ctx != nullptr) {
    std::strncpy(ctx->message, msg, sizeof(ctx->message) - 1);
  }
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

std::string describe(const std::filesystem::path& path) { return "'" + path.string() + "'"; }

// Composites one channel over white with rounding.
std::uint8_t over_white(unsigned c, unsigned a) {
  return static_cast<std::uint8_t>((c * a + 255u * (255u - a) + 127u) / 255u);
}

void write_png(const std::filesystem::path& path, int width, int height, int color_type,
               const std::vector<std::uint8_t>& pixels, int channels) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) {
    throw ImageIoError("cannot open " + describe(path) + " for writing: " +
                       std::strerror(errno));
  }
  ErrorContext ctx;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, on_png_error, on_png_warning);
  if (png == nullptr) throw ImageIoError("out of memory creating PNG writer");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw ImageIoError("out of memory creating PNG writer");
  }

  std::vector<png_const_bytep> rows(static_cast<std::size_t>(height));
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y) rows[y] = pixels.data() + stride * y;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw ImageIoError("failed to encode " + describe(path) + ": " + ctx.message);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               8, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_rows(png, const_cast<png_bytepp>(rows.data()), static_cast<png_uint_32>(height));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);

  if (std::fflush(fp.get()) != 0) {
    throw ImageIoError("failed to flush " + describe(path));
  }
}

}  // namespace

ColorImage load_image(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) {
    throw ImageIoError("cannot open " + describe(path) + ": " + std::strerror(errno));
  }

  png_byte signature[8] = {};
  if (std::fread(signature, 1, sizeof(signature), fp.get()) != sizeof(signature) ||
      png_sig_cmp(signature, 0, sizeof(signature)) != 0) {
    throw ImageIoError(describe(path) + " is not a PNG file");
  }

  ErrorContext ctx;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, on_png_error, on_png_warning);
  if (png == nullptr) throw ImageIoError("out of memory creating PNG reader");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw ImageIoError("out of memory creating PNG reader");
  }

  // Declared before setjmp so a longjmp never skips their construction.
  std::vector<std::uint8_t> rgba;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0;
  png_uint_32 height = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError("corrupt PNG stream in " + describe(path) + ": " + ctx.message);
  }

  png_init_io(png, fp.get());
  png_set_sig_bytes(png, sizeof(signature));
  png_read_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth > 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError(describe(path) + " has unsupported bit depth " +
                       std::to_string(bit_depth) + " (only 8-bit and below are accepted)");
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_filler(png, 0xFF, PNG_FILLER_AFTER);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const std::size_t stride = static_cast<std::size_t>(width) * 4;
  if (png_get_rowbytes(png, info) != stride) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ImageIoError("unexpected row layout in " + describe(path));
  }
  rgba.resize(stride * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = rgba.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0, n = static_cast<std::size_t>(width) * height; i < n; ++i) {
    const unsigned a = rgba[4 * i + 3];
    for (int c = 0; c < 3; ++c) {
      rgb[3 * i + c] = over_white(rgba[4 * i + c], a);
    }
  }
  return ColorImage(static_cast<int>(width), static_cast<int>(height), std::move(rgb));
}

IntensityMap load_intensity(const std::filesystem::path& path) {
  return to_intensity(load_image(path));
}

void save_image(const ColorImage& img, const std::filesystem::path& path) {
  if (img.empty()) throw InvalidArgument("cannot save an empty image");
  std::vector<std::uint8_t> pixels(img.bytes().begin(), img.bytes().end());
  write_png(path, img.width(), img.height(), PNG_COLOR_TYPE_RGB, pixels, 3);
}

void save_image(const IntensityMap& map, const std::filesystem::path& path) {
  if (map.empty()) throw InvalidArgument("cannot save an empty intensity map");
  std::vector<std::uint8_t> pixels(map.pixel_count());
  for (std::size_t i = 0; i < map.pixel_count(); ++i) pixels[i] = quantize(map[i]);
  write_png(path, map.width(), map.height(), PNG_COLOR_TYPE_GRAY, pixels, 1);
}

}  // namespace sketch2manga
