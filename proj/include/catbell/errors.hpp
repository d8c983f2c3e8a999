#pragma once

#include <stdexcept>
#include <string>

namespace catbell {

/// Invalid or inconsistent run configuration (bad field values, unparsable input).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A formula was evaluated outside its domain of validity (e.g. before the
/// packet has cleared the interaction zone).
class ValidityError : public std::domain_error {
 public:
  explicit ValidityError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical run violated its own safety budget (grid too small, step too
/// coarse, probability leaking off the grid).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catbell
