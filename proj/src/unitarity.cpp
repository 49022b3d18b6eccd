#include <stdexcept>
#include <vector>

#include "torusq/oracles.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace torusq {

namespace {

// Exact division of integer polynomials, low degree first. Used only with
// monic divisors, so the quotient stays integral.
std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& den) {
  const std::size_t dn = num.size() - 1;
  const std::size_t dd = den.size() - 1;
  if (den.back() != 1) throw std::logic_error("divisor must be monic");
  std::vector<std::int64_t> quot(dn - dd + 1, 0);
  for (std::size_t i = dn + 1; i-- > dd;) {
    const std::int64_t c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) {
      num[i - dd + j] -= c * den[j];
    }
  }
  for (std::int64_t c : num) {
    if (c != 0) throw std::logic_error("polynomial division not exact");
  }
  return quot;
}

// Remainder of c(x) modulo a monic divisor.
std::vector<std::int64_t> poly_mod(std::vector<std::int64_t> num,
                                   const std::vector<std::int64_t>& den) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::size_t i = num.size() - 1;
    const std::int64_t c = num[i];
    if (c != 0) {
      for (std::size_t j = 0; j <= dd; ++j) {
        num[i - dd + j] -= c * den[j];
      }
    }
    num.pop_back();
  }
  return num;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
  std::vector<std::int64_t> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num.back() = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) {
      num = poly_divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
  }
  return num;
}

UnitarityReport verify_unitary_exact(const ToeplitzSpec& spec,
                                     std::int64_t dimension_guard) {
  const std::int64_t dim = spec.dimension();
  if (dim > dimension_guard) {
    throw std::invalid_argument("dimension guard exceeded");
  }
  std::int64_t target = 1;
  for (int i = 0; i < spec.alpha; ++i) target *= 4;

  std::vector<int> entries(static_cast<std::size_t>(dim * dim));
  for (std::int64_t m = 1; m <= dim; ++m) {
    for (std::int64_t n = 1; n <= dim; ++n) {
      entries[static_cast<std::size_t>((m - 1) * dim + n - 1)] =
          toeplitz_entry(spec, m, n);
    }
  }

  std::int64_t worst = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst)
#endif
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t s = 0; s < dim; ++s) {
      std::int64_t acc = 0;
      for (std::int64_t k = 0; k < dim; ++k) {
        acc += static_cast<std::int64_t>(
                   entries[static_cast<std::size_t>(r * dim + k)]) *
               entries[static_cast<std::size_t>(s * dim + k)];
      }
      const std::int64_t expected = (r == s) ? target : 0;
      const std::int64_t dev = std::abs(acc - expected);
      if (dev > worst) worst = dev;
    }
  }
  return UnitarityReport{worst == 0, worst, dim};
}

UnitarityReport verify_unitary_exact(const LittlewoodSpec& spec,
                                     std::int64_t dimension_guard) {
  const std::int64_t dim = spec.dimension();
  if (dim > dimension_guard) {
    throw std::invalid_argument("dimension guard exceeded");
  }
  const int N = spec.n_base;
  const auto phi = cyclotomic_polynomial(N);

  std::vector<int> exps(static_cast<std::size_t>(dim * dim));
  for (std::int64_t m = 1; m <= dim; ++m) {
    for (std::int64_t n = 1; n <= dim; ++n) {
      exps[static_cast<std::size_t>((m - 1) * dim + n - 1)] =
          littlewood_exponent(spec, m, n);
    }
  }

  std::int64_t worst = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
#endif
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t s = 0; s < dim; ++s) {
      // histogram of exponent differences: row r dot conj(row s) equals
      // sum_j count[j] w^j with w = e^{2 pi i / N}
      std::vector<std::int64_t> count(static_cast<std::size_t>(N), 0);
      for (std::int64_t n = 0; n < dim; ++n) {
        const int d = ((exps[static_cast<std::size_t>(r * dim + n)] -
                        exps[static_cast<std::size_t>(s * dim + n)]) %
                           N +
                       N) %
                      N;
        ++count[static_cast<std::size_t>(d)];
      }
      std::int64_t dev = 0;
      if (r == s) {
        // all differences are zero and the sum is exactly the dimension
        dev = std::abs(count[0] - dim);
        for (int j = 1; j < N; ++j) {
          dev = std::max(dev, std::abs(count[static_cast<std::size_t>(j)]));
        }
      } else {
        // sum_j count[j] w^j vanishes iff Phi_N divides the histogram
        // polynomial (w is a primitive N-th root of unity)
        const auto rem = poly_mod(count, phi);
        for (std::int64_t c : rem) dev = std::max(dev, std::abs(c));
      }
      if (dev > worst) worst = dev;
    }
  }
  return UnitarityReport{worst == 0, worst, dim};
}

}  // namespace torusq
