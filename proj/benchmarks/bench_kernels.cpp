// Timing comparison of the OpenMP kernels against their serial references:
// the Monte Carlo trial loop and the principal-value variance oracle.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spikedclt/monte_carlo.hpp"
#include "spikedclt/quadrature.hpp"

namespace sc = spikedclt;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int hw_threads = omp_get_max_threads();
#else
  const int hw_threads = 1;
#endif
  std::printf("hardware threads: %d\n\n", hw_threads);

  {
    const auto spec = sc::EnsembleSpec::model_b(2.0, 1.0);
    const auto stat = sc::make_statistic("capacity", {1.0});
    sc::SampleConfig cfg{.n = 24, .m = 48, .spike = 1.0, .trials = 2000, .seed = 1};

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = sc::run_experiment_serial(spec, stat, cfg);
    const double t_serial = seconds(t0);

    cfg.threads = hw_threads;
    t0 = std::chrono::steady_clock::now();
    const auto parallel = sc::run_experiment(spec, stat, cfg);
    const double t_parallel = seconds(t0);

    std::printf("monte carlo trials (n=24, m=48, 2000 trials)\n");
    std::printf("  serial reference : %8.3f s\n", t_serial);
    std::printf("  openmp (%2d thr)  : %8.3f s   speedup %.2fx\n", hw_threads, t_parallel,
                t_serial / t_parallel);
    std::printf("  identical reports: %s\n\n",
                serial.sample_mean == parallel.sample_mean &&
                        serial.ks_distance == parallel.ks_distance
                    ? "yes"
                    : "NO");
  }

  {
    const auto iv = sc::support_interval(sc::EnsembleSpec::model_a(2.0, 0.0));
    const auto stat = sc::make_statistic("capacity", {1.0});
    sc::QuadratureConfig cfg;
    cfg.pv_grid = 8001;

    // The oracle's outer loop carries the pragma; pin one thread to get the
    // serial baseline of the same code.
    const auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const double v1 = sc::variance_pv_oracle(stat, iv, cfg);
    const double t_serial = seconds(t0);

#ifdef _OPENMP
    omp_set_num_threads(hw_threads);
#endif
    const auto t1 = std::chrono::steady_clock::now();
    const double v2 = sc::variance_pv_oracle(stat, iv, cfg);
    const double t_parallel = seconds(t1);

    std::printf("pv variance oracle (grid 8001)\n");
    std::printf("  serial (1 thr)   : %8.3f s\n", t_serial);
    std::printf("  openmp (%2d thr)  : %8.3f s   speedup %.2fx\n", hw_threads, t_parallel,
                t_serial / t_parallel);
    std::printf("  identical result : %s\n", v1 == v2 ? "yes" : "NO");
  }
  return 0;
}
