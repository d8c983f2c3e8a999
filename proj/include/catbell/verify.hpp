#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catbell/grid.hpp"
#include "catbell/model.hpp"

namespace catbell {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool larger_is_better = false;
  bool pass = false;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  // Sampling diagnostics of the grid actually used.
  double points_per_alpha = 0.0;
  double points_per_wavelength = 0.0;
  int grid_points = 0;
  double dt = 0.0;

  bool all_pass() const;
  std::string to_json() const;
};

/// Cross-validation battery for one scenario:
///  - free propagation against the exact dispersing Gaussian (fidelity 1 - 1e-10),
///  - norm conservation of the square-well run (drift <= 1e-8),
///  - each propagated branch against the closed-form packet (fidelity > 0.999),
///  - measured branch separation against D (within one grid spacing),
///  - Wigner closed forms against displaced-parity quadrature (<= 1e-6),
///  - correlation closed form against the direct operator expectation (<= 1e-5).
VerifyReport run_verification(const SystemConfig& cfg, const Grid& grid, double dt,
                              std::uint64_t seed);

}  // namespace catbell
