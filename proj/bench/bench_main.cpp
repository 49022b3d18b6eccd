// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Not a correctness test; those live in tests/.

#include <chrono>
#include <cstdio>

#include "torusq/double_series.hpp"
#include "torusq/fourier.hpp"
#include "torusq/oracles.hpp"
#include "torusq/polydisc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace torusq;

double seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <typename F>
double timed(const char* label, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const double dt = seconds(t0);
  std::printf("  %-28s %8.3f s\n", label, dt);
  return dt;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns are serial\n");
#endif

  const auto toeplitz =
      CoefficientOracle::toeplitz_composite(3, WeightSequence::inverse_square());
  const std::int64_t dim = toeplitz.layout().total_dimension();

  std::printf("random-sampling bound search (%lld vars, 20000 samples)\n",
              static_cast<long long>(dim));
  double serial = timed("serial", [&] {
    bound_search_serial(toeplitz, dim, RandomSampling{20000, 42});
  });
  double parallel = timed("openmp", [&] {
    bound_search(toeplitz, dim, RandomSampling{20000, 42, false, true});
  });
  std::printf("  speedup %.2fx\n", serial / parallel);

  std::printf("block-1 quadrature DFT (grid 9^4)\n");
  serial = timed("serial", [&] { quadrature_check_serial(toeplitz, 9); });
  parallel = timed("openmp", [&] { quadrature_check(toeplitz, 9); });
  std::printf("  speedup %.2fx\n", serial / parallel);

  std::printf("pringsheim window scan (corner 72)\n");
  TermOracle terms = form_terms_at(toeplitz, {});
  serial = timed("serial", [&] { pringsheim_diagnose_serial(terms, 1e-2, 72); });
  parallel = timed("openmp", [&] { pringsheim_diagnose(terms, 1e-2, 72); });
  std::printf("  speedup %.2fx\n", serial / parallel);

  std::printf("block-3 coefficient mass enumeration\n");
  serial = timed("serial", [&] { block_l1_mass_enumerated_serial(toeplitz, 3); });
  parallel = timed("openmp", [&] { block_l1_mass_enumerated(toeplitz, 3); });
  std::printf("  speedup %.2fx\n", serial / parallel);

  return 0;
}
