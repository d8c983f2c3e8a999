#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "catbell/grid.hpp"
#include "catbell/model.hpp"
#include "catbell/scan.hpp"

namespace catbell {

/// Optional grid/step overrides carried by a config file.
struct GridSpec {
  std::optional<double> z_min;
  std::optional<double> z_max;
  std::optional<int> n_points;
  std::optional<double> dt;
};

struct RunConfig {
  SystemConfig system;
  GridSpec grid;
  std::uint64_t seed = 12345;

  /// Resolves the grid spec against the defaults for this scenario.
  Grid make_grid(double tau, int n_points_override = 0) const;
};

/// Parses the JSON config document:
///   { "scale_product": .., "z0_over_L": .., "alpha_over_L": .., "k0_scaled": ..,
///     "gamma_t": .., "grid": {"z_min":..,"z_max":..,"n_points":..,"dt":..}, "seed": .. }
/// Throws ConfigError on missing/invalid fields.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

/// Angle values: a plain number is radians; the literals "pi", "pi/2", "pi/4",
/// "3pi/4", "2pi" (optionally with a leading '-') are parsed exactly.
double parse_angle(const std::string& text);

/// "start:stop:count", both endpoints included.  Endpoints are angle-parsed
/// when `angles` is set.
Range parse_range(const std::string& text, bool angles = false);

/// Floats rendered with 15 significant digits ("%.15g").
std::string format_double(double v);

}  // namespace catbell
