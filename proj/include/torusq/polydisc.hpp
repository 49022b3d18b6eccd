#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "torusq/oracles.hpp"

namespace torusq {

// Point of the infinite polydisc, stored as a finite prefix plus a tail
// convention. Torus points enter through from_torus (z_j = e^{2 pi i x_j}).
struct PolydiscPoint {
  enum class Tail { ones, zeros };

  std::vector<cplx> prefix;
  Tail tail = Tail::ones;

  cplx coord(std::int64_t j) const;  // 1-based

  static PolydiscPoint all_ones();
  static PolydiscPoint all_zeros();
  static PolydiscPoint from_prefix(std::vector<cplx> prefix,
                                   Tail tail = Tail::zeros);
  static PolydiscPoint from_torus(const std::vector<double>& x,
                                  Tail tail = Tail::ones);
  // independent uniform phases on |z_j| = 1 for j = 1..dim
  static PolydiscPoint random_torus(std::int64_t dim, std::uint64_t seed);
  // uniform in the closed unit disc per coordinate (falsification testing)
  static PolydiscPoint random_interior(std::int64_t dim, std::uint64_t seed);

  // throws when some stored |z_j| exceeds 1 + tol
  void validate(double tol = 1e-12) const;
};

struct SectionValue {
  cplx value{0.0, 0.0};
  std::int64_t m_limit = 0;
  std::int64_t n_limit = 0;
  std::int64_t terms_summed = 0;
  bool truncated = false;  // limits ran past the configured blocks
};

// sum_{m,n <= m_limit} a_mn z_m z_n, block-major then row-major, compensated.
// Cross-block zeros are skipped, so the cost is the sum of block sizes
// squared.
SectionValue eval_quadratic_section(const CoefficientOracle& oracle,
                                    std::int64_t m_limit,
                                    const PolydiscPoint& z);

SectionValue eval_bilinear_section(const CoefficientOracle& oracle,
                                   std::int64_t m_limit, std::int64_t n_limit,
                                   const PolydiscPoint& x,
                                   const PolydiscPoint& y);

// sum_{j <= m_limit} (a_pj + a_jp) z_j
cplx analytic_gradient(const CoefficientOracle& oracle, std::int64_t m_limit,
                       const PolydiscPoint& z, std::int64_t p);

// ---------------------------------------------------------------------------
// Bound search
// ---------------------------------------------------------------------------

struct RandomSampling {
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  bool interior = false;  // sample inside the disc instead of the torus
  bool parallel = true;
};

struct PhaseCoordinateAscent {
  int sweeps = 25;
  int phase_grid = 720;
  std::uint64_t seed = 1;
  int restarts = 1;  // restart 1 starts from all-ones, the rest are random
};

using BoundSearchStrategy = std::variant<RandomSampling, PhaseCoordinateAscent>;

struct BoundSearchResult {
  double best_modulus = 0.0;
  PolydiscPoint argmax;
  std::int64_t iterations = 0;
  double certified_bound = 0.0;
};

BoundSearchResult bound_search(const CoefficientOracle& oracle,
                               std::int64_t m_limit,
                               const BoundSearchStrategy& strategy);

// Serial twin of the sampling search, kept as the reference for the OpenMP
// path; results are bit-identical.
BoundSearchResult bound_search_serial(const CoefficientOracle& oracle,
                                      std::int64_t m_limit,
                                      const RandomSampling& strategy);

// ---------------------------------------------------------------------------
// Uniform tail bound between two block-aligned section corners
// ---------------------------------------------------------------------------

struct TailBoundReport {
  double empirical_sup = 0.0;   // max over samples of |C_large - C_small|
  double analytic_tail = 0.0;   // sum of block bounds between the corners
  std::int64_t samples = 0;
};

TailBoundReport uniform_tail_bound(const CoefficientOracle& oracle,
                                   std::int64_t m_limit_small,
                                   std::int64_t m_limit_large,
                                   std::int64_t samples, std::uint64_t seed);

}  // namespace torusq
