// Timing harness comparing the OpenMP kernels against their serial reference
// implementations.  Build and run:  ./bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <omp.h>
#include <vector>

#include "catbell/optimize.hpp"
#include "catbell/oracle.hpp"
#include "catbell/scan.hpp"

using namespace catbell;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  const SystemConfig fig2{250.0, 1.75, 0.03, 2.31, 190.0};
  const double tau = fig2.tau();

  std::printf("threads: %d, repeats: %d\n", omp_get_max_threads(), repeats);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    const Range zr{1.2, 2.3, 400};
    const Range kr{2.0, 2.62, 400};
    const double beta = std::numbers::pi / 4;
    row("wigner_map 400x400",
        time_ms([&] { wigner_map_serial(fig2, tau, beta, zr, kr); }, repeats),
        time_ms([&] { wigner_map(fig2, tau, beta, zr, kr); }, repeats));
  }
  {
    const ChshScanFixed fixed{0.24, fig2.k0(), fig2.k0(), std::numbers::pi / 2};
    const Range zpr{1.2, 2.3, 300};
    const Range bpr{0.0, 2.0 * std::numbers::pi, 300};
    row("chsh_scan 300x300",
        time_ms([&] { chsh_scan_serial(fig2, tau, fixed, zpr, bpr); }, repeats),
        time_ms([&] { chsh_scan(fig2, tau, fixed, zpr, bpr); }, repeats));
  }
  {
    const std::vector<SystemConfig> configs{fig2};
    row("tsirelson_sample 2e5",
        time_ms([&] { tsirelson_sample_serial(configs, 200000, 7); }, repeats),
        time_ms([&] { tsirelson_sample(configs, 200000, 7); }, repeats));
  }
  {
    row("optimize_chsh design x24",
        time_ms([&] { optimize_chsh_serial(fig2, tau, OptimizeMode::design, 24, 11); }, repeats),
        time_ms([&] { optimize_chsh(fig2, tau, OptimizeMode::design, 24, 11); }, repeats));
  }
  {
    Grid grid = Grid::default_for(fig2, tau, 1 << 14);
    const GridState state = sample_analytic_state(fig2, tau, grid);
    std::vector<AtomSetting> atoms;
    std::vector<FieldSetting> fields;
    const double mid = -fig2.z0() + drift(fig2, tau);
    for (int i = 0; i < 64; ++i) {
      atoms.push_back(AtomSetting{{mid + 0.01 * i - 0.32, fig2.k0() + 0.001 * i}});
      fields.push_back(FieldSetting{0.1 * i});
    }
    row("expectation_ab 64 @ 2^14",
        time_ms([&] { expectation_ab_batch_serial(state, atoms, fields); }, repeats),
        time_ms([&] { expectation_ab_batch(state, atoms, fields); }, repeats));
  }
  return 0;
}
