#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sketch2manga/image.hpp"

namespace sketch2manga {

/// Scratch directory removed (recursively) on destruction unless released.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "sketch2manga");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  TempDir(TempDir&& other) noexcept;
  TempDir& operator=(TempDir&& other) noexcept;

  const std::filesystem::path& path() const noexcept { return path_; }
  /// Keeps the directory on disk.
  std::filesystem::path release() noexcept;

 private:
  std::filesystem::path path_;
};

/// Result of one shell command.
struct CommandResult {
  int exit_status = 0;
  /// Combined stdout and stderr.
  std::string output;
};

/// Runs `command` with /bin/sh -c, capturing its output.
CommandResult run_command(const std::string& command);

/// Substitutes shell-quoted {in} and {out}. Throws ConfigError when either
/// placeholder is missing.
std::string expand_command_template(std::string_view command_template,
                                    const std::filesystem::path& in,
                                    const std::filesystem::path& out);

/// Throws ConfigError unless the template contains both placeholders.
void validate_command_template(std::string_view command_template);

/// Generator wire contract: runs the command on an 8-bit grayscale PNG at
/// `intensity_path` and reads back the PNG written to {out}.
///
/// Throws GeneratorError for a non-zero exit status, a missing output file or
/// an output whose dimensions differ from the input.
IntensityMap run_external_generator(const std::filesystem::path& intensity_path,
                                    std::string_view command_template);

/// Writes `intensity` to a scratch directory and runs the generator on it.
IntensityMap run_external_generator(const IntensityMap& intensity,
                                    std::string_view command_template);

/// Same contract for colorization: a sketch PNG goes in, an RGB PNG of the
/// same size comes out.
ColorImage run_external_colorizer(const std::filesystem::path& sketch_path,
                                  std::string_view command_template);

}  // namespace sketch2manga
