#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

/// Invalid configuration text. `line()` is 0 when the problem is not tied to
/// a single line (e.g. a default value that conflicts with another key).
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string &message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pfc
