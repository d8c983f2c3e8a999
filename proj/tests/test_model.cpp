#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "catbell/model.hpp"
#include "catbell/quadrature.hpp"
#include "test_helpers.hpp"

using namespace catbell;
using catbell::testing::fig2;
using catbell::testing::fig3;

namespace {

double density_integral(const SystemConfig& cfg, double tau, BranchSign b) {
  const double center = -cfg.z0() + drift(cfg, tau) - sign_of(b) * separation_d(cfg) / 2.0;
  const double w = width_at(cfg, tau);
  return integrate_gl(
      [&](double z) { return std::norm(branch_amplitude(z, tau, b, cfg)); },
      center - 10.0 * w, center + 10.0 * w);
}

}  // namespace

TEST_CASE("config validation rejects non-positive fields") {
  SystemConfig bad = fig2();
  bad.alpha_over_L = -0.01;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = fig2();
  bad.gamma_t = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_NOTHROW(fig2().validate());
}

TEST_CASE("initial amplitude peaks at -z0 with the closed-form modulus") {
  const SystemConfig cfg = fig2();
  const auto at_center = initial_amplitude(-cfg.z0(), cfg);
  const double expected = std::pow(2.0 * M_PI * cfg.alpha() * cfg.alpha(), -0.25);
  CHECK(std::abs(at_center) == doctest::Approx(expected).epsilon(1e-14));
  // Modulus maximal at the center.
  CHECK(std::abs(initial_amplitude(-cfg.z0() + 0.01, cfg)) < std::abs(at_center));

  // One width away the modulus has dropped by e^{-1/4}.
  const double ratio = std::abs(initial_amplitude(-cfg.z0() + cfg.alpha(), cfg)) /
                       std::abs(at_center);
  CHECK(ratio == doctest::Approx(std::exp(-0.25)).epsilon(1e-13));
}

TEST_CASE("initial amplitude is unit-normalized") {
  const SystemConfig cfg = fig2();
  const double norm = integrate_gl(
      [&](double z) { return std::norm(initial_amplitude(z, cfg)); },
      -cfg.z0() - 10.0 * cfg.alpha(), -cfg.z0() + 10.0 * cfg.alpha());
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("branch separation: D = 2/k0^2") {
  SystemConfig cfg = fig2();
  CHECK(separation_d(cfg) == doctest::Approx(0.374805547).epsilon(1e-9));  // caption's 0.375
  cfg.k0_scaled = std::sqrt(2.0);
  CHECK(separation_d(cfg) == doctest::Approx(1.0).epsilon(1e-14));
  cfg.k0_scaled = 2.668;
  CHECK(separation_d(cfg) == doctest::Approx(2.0 / (2.668 * 2.668)).epsilon(1e-14));
  CHECK(separation_d(cfg) == doctest::Approx(0.2809688).epsilon(1e-6));
}

TEST_CASE("transit time is linear in z0 and inverse in k0") {
  SystemConfig cfg = fig2();
  const double t0 = transit_time(cfg);
  cfg.z0_over_L *= 2.0;
  CHECK(transit_time(cfg) == doctest::Approx(2.0 * t0).epsilon(1e-14));
  cfg.z0_over_L /= 2.0;
  cfg.k0_scaled *= 2.0;
  CHECK(transit_time(cfg) == doctest::Approx(0.5 * t0).epsilon(1e-14));
}

TEST_CASE("both reference scenarios measure after transit") {
  CHECK(transit_time(fig2()) == doctest::Approx(189.3939394).epsilon(1e-9));
  CHECK(transit_time(fig2()) < fig2().tau());
  CHECK(transit_time(fig3()) == doctest::Approx(339.0573).epsilon(1e-6));
  CHECK(transit_time(fig3()) < fig3().tau());
}

TEST_CASE("phase reduces to the plane-wave part at the moving center") {
  const SystemConfig cfg = fig2();
  const double tau = cfg.tau();
  const double center = 0.4;
  const double z = drift(cfg, tau) - center;  // quadratic term vanishes here
  const double expected = cfg.k0() * cfg.lambda() * z - cfg.k0() * cfg.k0() * tau;
  CHECK(phase_phi(z, tau, center, cfg) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("phase quadratic term depends on z + center only") {
  const SystemConfig cfg = fig2();
  const double tau = 120.0;
  auto quadratic = [&](double z, double c) {
    return phase_phi(z, tau, c, cfg) -
           (cfg.k0() * cfg.lambda() * z - cfg.k0() * cfg.k0() * tau);
  };
  const double shift = 0.37;
  CHECK(quadratic(0.8, 0.5) ==
        doctest::Approx(quadratic(0.8 + shift, 0.5 - shift)).epsilon(1e-12));
}

TEST_CASE("phase rejects t = 0") {
  CHECK_THROWS_AS(phase_phi(0.1, 0.0, 0.2, fig2()), ValidityError);
}

TEST_CASE("branch amplitudes refuse times before transit") {
  const SystemConfig cfg = fig2();
  CHECK_THROWS_AS(branch_amplitude(1.0, 0.5 * transit_time(cfg), BranchSign::plus, cfg),
                  ValidityError);
  CHECK_NOTHROW(branch_amplitude(1.0, cfg.tau(), BranchSign::plus, cfg));
}

TEST_CASE("branch packets are unit-normalized after the cavity") {
  const SystemConfig cfg = fig2();
  CHECK(density_integral(cfg, cfg.tau(), BranchSign::plus) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(density_integral(cfg, cfg.tau(), BranchSign::minus) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("branch moduli are translates of each other by D") {
  const SystemConfig cfg = fig2();
  const double tau = cfg.tau();
  const double d = separation_d(cfg);
  const double base = -cfg.z0() + drift(cfg, tau);
  for (double dz = -0.3; dz <= 0.3; dz += 0.06) {
    const double z = base + dz;
    CHECK(std::abs(branch_amplitude(z, tau, BranchSign::plus, cfg)) ==
          doctest::Approx(std::abs(branch_amplitude(z + d, tau, BranchSign::minus, cfg)))
              .epsilon(1e-12));
  }
}

TEST_CASE("density variance follows the spreading law") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 4; ++trial) {
    const SystemConfig cfg = catbell::testing::random_valid_config(rng);
    const double tau = cfg.tau();
    const double w = width_at(cfg, tau);
    const double center = -cfg.z0() + drift(cfg, tau) - separation_d(cfg) / 2.0;
    auto moment = [&](int p) {
      return integrate_gl(
          [&](double z) {
            return std::pow(z, p) * std::norm(branch_amplitude(z, tau, BranchSign::plus, cfg));
          },
          center - 12.0 * w, center + 12.0 * w);
    };
    const double m0 = moment(0);
    const double mean = moment(1) / m0;
    const double var = moment(2) / m0 - mean * mean;
    CHECK(var == doctest::Approx(w * w).epsilon(1e-8));
    CHECK(mean == doctest::Approx(center).epsilon(1e-8));
  }
}

TEST_CASE("free amplitude at t=0 equals the initial amplitude") {
  const SystemConfig cfg = fig2();
  for (double z : {-1.9, -1.75, -1.7}) {
    const auto a = free_amplitude(z, 0.0, cfg);
    const auto b = initial_amplitude(z, cfg);
    CHECK(std::abs(a - b) < 1e-14);
  }
}

TEST_CASE("geometry report flags the interior-start scenario") {
  CHECK(check_geometry(fig2(), fig2().tau()).all());
  const auto g3 = check_geometry(fig3(), fig3().tau());
  CHECK_FALSE(g3.packet_starts_outside_well);  // z0 = 0.15 starts inside the well
  CHECK(g3.measurement_after_transit);
  CHECK_FALSE(g3.branches_clear_of_well);
}
