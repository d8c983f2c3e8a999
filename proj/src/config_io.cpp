#include "catbell/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace catbell {

namespace {
using nlohmann::json;

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(std::string("config: missing or non-numeric field '") + key + "'");
  }
  return j[key].get<double>();
}
}  // namespace

Grid RunConfig::make_grid(double tau, int n_points_override) const {
  int n = n_points_override;
  if (n == 0 && grid.n_points) n = *grid.n_points;
  Grid g = Grid::default_for(system, tau, n);
  if (grid.z_min) g.z_min = *grid.z_min;
  if (grid.z_max) g.z_max = *grid.z_max;
  g.validate();
  return g;
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig rc;
  rc.system.scale_product = require_number(j, "scale_product");
  rc.system.z0_over_L = require_number(j, "z0_over_L");
  rc.system.alpha_over_L = require_number(j, "alpha_over_L");
  rc.system.k0_scaled = require_number(j, "k0_scaled");
  rc.system.gamma_t = require_number(j, "gamma_t");
  rc.system.validate();
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) throw ConfigError("config: 'grid' must be an object");
    if (g.contains("z_min")) rc.grid.z_min = g["z_min"].get<double>();
    if (g.contains("z_max")) rc.grid.z_max = g["z_max"].get<double>();
    if (g.contains("n_points")) rc.grid.n_points = g["n_points"].get<int>();
    if (g.contains("dt")) rc.grid.dt = g["dt"].get<double>();
  }
  if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

double parse_angle(const std::string& text) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  double sign = 1.0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    if (s[0] == '-') sign = -1.0;
    s.erase(0, 1);
  }
  constexpr double pi = std::numbers::pi;
  if (s == "pi") return sign * pi;
  if (s == "pi/2") return sign * pi / 2.0;
  if (s == "pi/4") return sign * pi / 4.0;
  if (s == "3pi/4") return sign * 3.0 * pi / 4.0;
  if (s == "2pi") return sign * 2.0 * pi;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return sign * v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse angle '" + text + "'");
  }
}

Range parse_range(const std::string& text, bool angles) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ConfigError("range '" + text + "' must be start:stop:count");
  }
  auto number = [&](const std::string& part) {
    if (angles) return parse_angle(part);
    try {
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse range endpoint '" + part + "'");
    }
  };
  Range r;
  r.start = number(text.substr(0, first));
  r.stop = number(text.substr(first + 1, second - first - 1));
  try {
    r.count = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw ConfigError("cannot parse range count in '" + text + "'");
  }
  if (r.count < 1) throw ConfigError("range count must be >= 1");
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace catbell
