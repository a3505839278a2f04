#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sgbeam {

/// Rejected configuration text: carries the 1-based line or the key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& message)
      : std::runtime_error(format(line, key, message)), line_(line), key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(int line, const std::string& key, const std::string& message) {
    std::string out;
    if (line > 0) {
      out += "line " + std::to_string(line) + ": ";
    }
    if (!key.empty()) {
      out += key + ": ";
    }
    return out + message;
  }

  int line_;
  std::string key_;
};

/// Singular or non-finite numerics (singular effective matrix, NaN state, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

} // namespace sgbeam
