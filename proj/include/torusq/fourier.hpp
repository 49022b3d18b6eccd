#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torusq/oracles.hpp"

namespace torusq {

// Finitely supported integer frequency on the infinite torus. Canonical
// form: positions strictly increasing, no zero values stored.
struct MultiIndex {
  std::vector<std::pair<std::int64_t, std::int64_t>> support;  // (pos, value)

  static MultiIndex zero() { return {}; }
  static MultiIndex from_terms(
      std::vector<std::pair<std::int64_t, std::int64_t>> terms);
  // unit frequency at position m
  static MultiIndex e(std::int64_t m) { return from_terms({{m, 1}}); }

  // compact text form: "e1+e2", "2e3", "e1-e4", "0"
  static std::optional<MultiIndex> parse(const std::string& text);
  std::string to_string() const;

  std::int64_t total_degree() const;  // sum |values|
  bool operator==(const MultiIndex&) const = default;
};

// F-hat(p) for F(x) = sum a_mn e^{2 pi i (x_m + x_n)}: 2 a_mn at e_m + e_n
// (m != n), a_mm at 2 e_m, 0 for every other frequency.
cplx fourier_coefficient(const CoefficientOracle& oracle, const MultiIndex& p);

// Yields each nonzero-coefficient frequency supported in a block exactly
// once: e_m + e_n (m < n) with 2 a_mn, then 2 e_m with a_mm.
void enumerate_block_frequencies(
    const CoefficientOracle& oracle, int block,
    const std::function<void(const MultiIndex&, cplx)>& sink);

// ---------------------------------------------------------------------------
// Absolute-divergence ledger
// ---------------------------------------------------------------------------

struct LedgerRow {
  int block = 0;
  double block_mass = 0.0;   // sum of |F-hat| over the block's frequencies
  double closed_form = 0.0;  // 2^a mu_a or N^{mu/2}/mu^2
  double cumulative = 0.0;
  bool enumerated = false;   // false when the guard forced closed-form only
};

struct DivergenceLedger {
  std::vector<LedgerRow> rows;
  double sup_bound = 0.0;  // analytic sup of |C| on the polydisc
};

inline constexpr std::int64_t kDefaultEnumerationGuard = 256;

// Enumerates block masses up to the dimension guard, closed form beyond.
DivergenceLedger divergence_ledger(
    const CoefficientOracle& oracle, int blocks_max,
    std::int64_t enumeration_guard = kDefaultEnumerationGuard);

// Serial reference for the OpenMP block-mass enumeration; bit-identical.
double block_l1_mass_enumerated_serial(const CoefficientOracle& oracle,
                                       int block);
double block_l1_mass_enumerated(const CoefficientOracle& oracle, int block);

// ---------------------------------------------------------------------------
// Quadrature oracle (block 1 only)
// ---------------------------------------------------------------------------

inline constexpr std::int64_t kQuadratureEvalGuard = 10'000'000;

// Full-grid discrete Fourier transform of the block-1 trigonometric
// polynomial, compared frequency-by-frequency against the analytic
// trichotomy. grid_points_per_dim >= 5 makes the transform exact here (the
// per-variable bandwidth is 2). Returns the max absolute deviation.
double quadrature_check(const CoefficientOracle& oracle,
                        int grid_points_per_dim);
double quadrature_check_serial(const CoefficientOracle& oracle,
                               int grid_points_per_dim);

}  // namespace torusq
