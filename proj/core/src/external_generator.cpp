#include "sketch2manga/external_generator.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <system_error>

#include "sketch2manga/color.hpp"
#include "sketch2manga/error.hpp"
#include "sketch2manga/png_io.hpp"

namespace sketch2manga {
namespace fs = std::filesystem;

TempDir::TempDir(std::string_view prefix) {
  std::string pattern = (fs::temp_directory_path() / (std::string(prefix) + "-XXXXXX")).string();
  if (::mkdtemp(pattern.data()) == nullptr) {
    throw Error("cannot create temporary directory: " + std::string(std::strerror(errno)));
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  if (path_.empty()) return;
  std::error_code ec;
  fs::remove_all(path_, ec);
}

TempDir::TempDir(TempDir&& other) noexcept : path_(std::move(other.path_)) {
  other.path_.clear();
}

TempDir& TempDir::operator=(TempDir&& other) noexcept {
  if (this != &other) {
    if (!path_.empty()) {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
    path_ = std::move(other.path_);
    other.path_.clear();
  }
  return *this;
}

fs::path TempDir::release() noexcept {
  fs::path p = std::move(path_);
  path_.clear();
  return p;
}

CommandResult run_command(const std::string& command) {
  int fds[2];
  if (::pipe(fds) != 0) {
    throw Error("pipe() failed: " + std::string(std::strerror(errno)));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error("fork() failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  ::close(fds[1]);
  CommandResult result;
  std::array<char, 4096> buf{};
  for (;;) {
    const ssize_t n = ::read(fds[0], buf.data(), buf.size());
    if (n > 0) {
      result.output.append(buf.data(), static_cast<std::size_t>(n));
    } else if (n == 0 || errno != EINTR) {
      break;
    }
  }
  ::close(fds[0]);

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw Error("waitpid() failed: " + std::string(std::strerror(errno)));
  }
  if (WIFEXITED(status)) {
    result.exit_status = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_status = 128 + WTERMSIG(status);
  } else {
    result.exit_status = -1;
  }
  return result;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

void replace_all(std::string& text, std::string_view token, const std::string& value) {
  for (std::size_t pos = text.find(token); pos != std::string::npos;
       pos = text.find(token, pos + value.size())) {
    text.replace(pos, token.size(), value);
  }
}

std::string trimmed(std::string text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.pop_back();
  }
  constexpr std::size_t kMaxDiagnostics = 2000;
  if (text.size() > kMaxDiagnostics) text = "..." + text.substr(text.size() - kMaxDiagnostics);
  return text;
}

std::string size_string(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

// Runs the template and returns the decoded {out} image, checked against the
// input's dimensions.
ColorImage invoke(const fs::path& in, std::string_view command_template, std::string_view role) {
  validate_command_template(command_template);
  const ColorImage input = load_image(in);

  TempDir scratch(std::string("sketch2manga-") + std::string(role));
  const fs::path out = scratch.path() / "out.png";
  const std::string command = expand_command_template(command_template, in, out);
  const CommandResult result = run_command(command);

  if (result.exit_status != 0) {
    std::string message = std::string(role) + " failed (exit status " +
                          std::to_string(result.exit_status) + ")";
    const std::string diagnostics = trimmed(result.output);
    if (!diagnostics.empty()) message += ": " + diagnostics;
    throw GeneratorError(GeneratorFailure::kNonZeroExit, message);
  }
  if (!fs::exists(out)) {
    throw GeneratorError(GeneratorFailure::kMissingOutput,
                         std::string(role) + " exited with status 0 but wrote no output to " +
                             out.string());
  }
  ColorImage produced = load_image(out);
  if (!same_dimensions(produced, input)) {
    throw GeneratorError(GeneratorFailure::kDimensionMismatch,
                         std::string(role) + " output is " +
                             size_string(produced.width(), produced.height()) +
                             " but its input is " + size_string(input.width(), input.height()));
  }
  return produced;
}

}  // namespace

void validate_command_template(std::string_view command_template) {
  if (command_template.find("{in}") == std::string_view::npos ||
      command_template.find("{out}") == std::string_view::npos) {
    throw ConfigError("command template '" + std::string(command_template) +
                      "' must contain both {in} and {out} placeholders");
  }
}

std::string expand_command_template(std::string_view command_template, const fs::path& in,
                                    const fs::path& out) {
  validate_command_template(command_template);
  std::string command(command_template);
  replace_all(command, "{in}", shell_quote(in.string()));
  replace_all(command, "{out}", shell_quote(out.string()));
  return command;
}

IntensityMap run_external_generator(const fs::path& intensity_path,
                                    std::string_view command_template) {
  return to_intensity(invoke(intensity_path, command_template, "generator"));
}

IntensityMap run_external_generator(const IntensityMap& intensity,
                                    std::string_view command_template) {
  validate_command_template(command_template);
  TempDir scratch("sketch2manga-intensity");
  const fs::path in = scratch.path() / "intensity.png";
  save_image(intensity, in);
  return run_external_generator(in, command_template);
}

ColorImage run_external_colorizer(const fs::path& sketch_path, std::string_view command_template) {
  return invoke(sketch_path, command_template, "colorizer");
}

}  // namespace sketch2manga
