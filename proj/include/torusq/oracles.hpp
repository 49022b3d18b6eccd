#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace torusq {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Single-block matrix families.
//
// Indices are 1-based everywhere in the public API; digit decompositions
// below work on m-1 and n-1.
// ---------------------------------------------------------------------------

// Recursive +-1 matrix of dimension 4^alpha. The block recursion
//   C_{a+1} = [[-C_a, C_a, C_a, C_a], [C_a, -C_a, ...], ...]
// is the alpha-fold Kronecker power of the depth-1 matrix, so the entry is
// the product over base-4 digit pairs of (m-1, n-1) of -1 when the digits
// match and +1 otherwise.
struct ToeplitzSpec {
  int alpha = 1;  // recursion depth, >= 1

  std::int64_t dimension() const;  // 4^alpha
};

// Root-of-unity matrix of dimension N^mu with N > 2. Entries are N-th roots
// of unity kept as integer exponents k, meaning e^{2 pi i k / N}.
struct LittlewoodSpec {
  int n_base = 3;  // N > 2
  int mu = 1;      // block level, >= 1

  std::int64_t dimension() const;  // N^mu
};

// Entry of C_alpha, exactly +1 or -1. O(alpha) per query, nothing stored.
int toeplitz_entry(const ToeplitzSpec& spec, std::int64_t m, std::int64_t n);

// Exponent k in 0..N-1 of the (m,n) entry of M_mu. Writing m-1, n-1 in base
// N with mu digits and mapping each digit d to r = d+1 in 1..N, the exponent
// is (sum_i r_i s_i) mod N.
int littlewood_exponent(const LittlewoodSpec& spec, std::int64_t m,
                        std::int64_t n);

cplx root_of_unity(int exponent, int n_base);

// ---------------------------------------------------------------------------
// Block-diagonal layout of the composite forms.
// ---------------------------------------------------------------------------

struct BlockLayout {
  std::vector<std::int64_t> sizes;    // 4, 4^2, ... or N, N^2, ...
  std::vector<std::int64_t> offsets;  // cumulative, offsets[0] = 0

  static BlockLayout from_sizes(std::vector<std::int64_t> sizes);

  int block_count() const { return static_cast<int>(sizes.size()); }
  std::int64_t total_dimension() const;

  struct Location {
    int block;           // 1-based block index
    std::int64_t local;  // 1-based index within the block
  };
  // nullopt when m lies past the configured blocks.
  std::optional<Location> locate(std::int64_t m) const;

  // end index of block b (1-based), i.e. a valid block-aligned m_limit
  std::int64_t block_end(int block) const;
};

// ---------------------------------------------------------------------------
// Block weights mu_alpha.
// ---------------------------------------------------------------------------

enum class WeightKind {
  inverse_square,    // mu_alpha = 1/alpha^2
  geometric,         // mu_alpha = 2^-alpha
  littlewood_fixed,  // N^{-3 mu / 2} / mu^2
  custom,
};

class WeightSequence {
 public:
  static WeightSequence inverse_square();
  static WeightSequence geometric();
  static WeightSequence littlewood_fixed(int n_base);
  // Custom weights must be nonnegative; the caller asserts summability.
  static WeightSequence custom(std::vector<double> values,
                               bool summable_asserted);

  WeightKind kind() const { return kind_; }
  double value(int block) const;  // 1-based
  // sum_{alpha=1}^infinity mu_alpha for the built-in kinds; for custom,
  // the sum of the provided list.
  double series_sum() const;
  bool summable() const;
  int n_base() const { return n_base_; }

 private:
  WeightKind kind_ = WeightKind::inverse_square;
  int n_base_ = 0;
  bool summable_asserted_ = true;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Coefficient oracle a_mn.
// ---------------------------------------------------------------------------

enum class OracleFamily {
  toeplitz_composite,
  littlewood_composite,
  single_toeplitz_block,
  single_littlewood_block,
  custom,
};

std::string family_name(OracleFamily family);

// Pure entry oracle for the (possibly composite, block-diagonal, weighted)
// quadratic form sum a_mn x_m x_n. Entries are never materialized.
class CoefficientOracle {
 public:
  static CoefficientOracle toeplitz_composite(int alpha_max,
                                              WeightSequence weights);
  static CoefficientOracle littlewood_composite(int n_base, int mu_max);
  static CoefficientOracle single_toeplitz(int alpha);
  static CoefficientOracle single_littlewood(int n_base, int mu);
  // entry(block, local_m, local_n) supplies raw block entries of modulus
  // <= 1; the weight sequence scales whole blocks.
  static CoefficientOracle custom(
      BlockLayout layout, WeightSequence weights,
      std::function<cplx(int, std::int64_t, std::int64_t)> entry);

  struct Entry {
    cplx value{0.0, 0.0};
    // true when the query lies past the configured blocks (value 0 there is
    // "not configured", not "structurally zero")
    bool truncated = false;
  };

  Entry coefficient(std::int64_t m, std::int64_t n) const;
  cplx operator()(std::int64_t m, std::int64_t n) const {
    return coefficient(m, n).value;
  }

  OracleFamily family() const { return family_; }
  const BlockLayout& layout() const { return layout_; }
  const WeightSequence& weights() const { return weights_; }
  int alpha_max() const { return alpha_max_; }
  int n_base() const { return n_base_; }
  int mu_max() const { return mu_max_; }

  // sup over the polydisc of the modulus of block b's weighted form
  double block_bound(int block) const;
  // analytic H with the full infinite block tail included
  double certified_bound() const;
  // sum of |a_mn| over block b: 2^alpha mu_alpha or N^{mu/2}/mu^2
  double block_l1_mass_closed_form(int block) const;

  std::string name() const;

 private:
  CoefficientOracle() = default;

  OracleFamily family_ = OracleFamily::custom;
  BlockLayout layout_;
  WeightSequence weights_ = WeightSequence::inverse_square();
  int alpha_max_ = 0;
  int n_base_ = 0;
  int mu_max_ = 0;
  std::function<cplx(int, std::int64_t, std::int64_t)> custom_entry_;
};

// ---------------------------------------------------------------------------
// Exact unitarity verification (integer arithmetic only).
// ---------------------------------------------------------------------------

struct UnitarityReport {
  bool is_unitary = false;
  // largest integer deviation seen; 0 on success
  std::int64_t max_deviation = 0;
  std::int64_t dimension = 0;
};

inline constexpr std::int64_t kDefaultUnitarityGuard = 4096;

// Checks C_alpha * C_alpha^T == 4^alpha * I with int64 arithmetic.
UnitarityReport verify_unitary_exact(
    const ToeplitzSpec& spec,
    std::int64_t dimension_guard = kDefaultUnitarityGuard);

// Checks that N^{-mu/2} M_mu is unitary. For each row pair the histogram of
// exponent differences is reduced modulo the N-th cyclotomic polynomial; a
// zero remainder certifies that the root-of-unity sum cancels exactly.
UnitarityReport verify_unitary_exact(
    const LittlewoodSpec& spec,
    std::int64_t dimension_guard = kDefaultUnitarityGuard);

// Integer coefficients of the N-th cyclotomic polynomial, low degree first.
std::vector<std::int64_t> cyclotomic_polynomial(int n);

}  // namespace torusq
