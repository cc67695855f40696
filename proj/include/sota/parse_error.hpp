#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sota {

// Malformed input file. Carries the 1-based line number (0 when the problem
// is not tied to a single line, e.g. a missing arc).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sota
