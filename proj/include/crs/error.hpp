#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crs {

/// Structurally invalid input: alphabet mismatch, malformed system,
/// violated precondition. Mapped to exit code 2 by the CLI.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget was exceeded (alphabet size, rule count, enumeration
/// size). Carries the recursion path that led to the overrun. Exit code 3.
class budget_error : public std::runtime_error {
 public:
  budget_error(const std::string& what, std::vector<std::string> path)
      : std::runtime_error(what + (path.empty() ? "" : " [at " + join(path) + "]")),
        path_(std::move(path)) {}

  const std::vector<std::string>& path() const noexcept { return path_; }

 private:
  static std::string join(const std::vector<std::string>& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) out += " > ";
      out += path[i];
    }
    return out;
  }

  std::vector<std::string> path_;
};

}  // namespace crs
