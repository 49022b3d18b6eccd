#include "torusq/polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torusq/rng.hpp"
#include "torusq/summation.hpp"

namespace torusq {

namespace {

constexpr double kGolden = 0.6180339887498949;

cplx unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

cplx PolydiscPoint::coord(std::int64_t j) const {
  if (j < 1) throw std::out_of_range("coordinate index must be >= 1");
  if (j <= static_cast<std::int64_t>(prefix.size())) {
    return prefix[static_cast<std::size_t>(j) - 1];
  }
  return tail == Tail::ones ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
}

PolydiscPoint PolydiscPoint::all_ones() { return {{}, Tail::ones}; }

PolydiscPoint PolydiscPoint::all_zeros() { return {{}, Tail::zeros}; }

PolydiscPoint PolydiscPoint::from_prefix(std::vector<cplx> prefix, Tail tail) {
  PolydiscPoint p{std::move(prefix), tail};
  p.validate();
  return p;
}

PolydiscPoint PolydiscPoint::from_torus(const std::vector<double>& x,
                                        Tail tail) {
  PolydiscPoint p;
  p.tail = tail;
  p.prefix.reserve(x.size());
  for (double xi : x) {
    p.prefix.push_back(unit_phase(2.0 * std::numbers::pi * xi));
  }
  return p;
}

PolydiscPoint PolydiscPoint::random_torus(std::int64_t dim,
                                          std::uint64_t seed) {
  SplitMix64 gen(seed);
  PolydiscPoint p;
  p.tail = Tail::ones;
  p.prefix.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t j = 0; j < dim; ++j) {
    p.prefix.push_back(unit_phase(2.0 * std::numbers::pi * gen.next_unit()));
  }
  return p;
}

PolydiscPoint PolydiscPoint::random_interior(std::int64_t dim,
                                             std::uint64_t seed) {
  SplitMix64 gen(seed);
  PolydiscPoint p;
  p.tail = Tail::zeros;
  p.prefix.reserve(static_cast<std::size_t>(dim));
  for (std::int64_t j = 0; j < dim; ++j) {
    const double r = std::sqrt(gen.next_unit());
    const double theta = 2.0 * std::numbers::pi * gen.next_unit();
    p.prefix.push_back(r * unit_phase(theta));
  }
  return p;
}

void PolydiscPoint::validate(double tol) const {
  for (const cplx& z : prefix) {
    if (std::abs(z) > 1.0 + tol) {
      throw std::invalid_argument("coordinate modulus exceeds 1");
    }
  }
}

// ---------------------------------------------------------------------------
// Section evaluation
// ---------------------------------------------------------------------------

SectionValue eval_quadratic_section(const CoefficientOracle& oracle,
                                    std::int64_t m_limit,
                                    const PolydiscPoint& z) {
  if (m_limit < 0) throw std::invalid_argument("m_limit must be >= 0");
  const BlockLayout& layout = oracle.layout();
  SectionValue out;
  out.m_limit = m_limit;
  out.n_limit = m_limit;
  out.truncated = m_limit > layout.total_dimension();

  CompensatedComplexSum acc;
  for (int b = 1; b <= layout.block_count(); ++b) {
    const std::int64_t off = layout.offsets[static_cast<std::size_t>(b) - 1];
    if (off >= m_limit) break;
    const std::int64_t cap =
        std::min(layout.sizes[static_cast<std::size_t>(b) - 1], m_limit - off);
    for (std::int64_t ml = 1; ml <= cap; ++ml) {
      const cplx zm = z.coord(off + ml);
      for (std::int64_t nl = 1; nl <= cap; ++nl) {
        acc.add(oracle(off + ml, off + nl) * zm * z.coord(off + nl));
        ++out.terms_summed;
      }
    }
  }
  out.value = acc.value();
  return out;
}

SectionValue eval_bilinear_section(const CoefficientOracle& oracle,
                                   std::int64_t m_limit, std::int64_t n_limit,
                                   const PolydiscPoint& x,
                                   const PolydiscPoint& y) {
  if (m_limit < 0 || n_limit < 0) {
    throw std::invalid_argument("limits must be >= 0");
  }
  const BlockLayout& layout = oracle.layout();
  SectionValue out;
  out.m_limit = m_limit;
  out.n_limit = n_limit;
  out.truncated = std::max(m_limit, n_limit) > layout.total_dimension();

  CompensatedComplexSum acc;
  for (int b = 1; b <= layout.block_count(); ++b) {
    const std::int64_t off = layout.offsets[static_cast<std::size_t>(b) - 1];
    const std::int64_t size = layout.sizes[static_cast<std::size_t>(b) - 1];
    if (off >= m_limit && off >= n_limit) break;
    const std::int64_t row_cap = std::clamp<std::int64_t>(m_limit - off, 0, size);
    const std::int64_t col_cap = std::clamp<std::int64_t>(n_limit - off, 0, size);
    for (std::int64_t ml = 1; ml <= row_cap; ++ml) {
      const cplx xm = x.coord(off + ml);
      for (std::int64_t nl = 1; nl <= col_cap; ++nl) {
        acc.add(oracle(off + ml, off + nl) * xm * y.coord(off + nl));
        ++out.terms_summed;
      }
    }
  }
  out.value = acc.value();
  return out;
}

cplx analytic_gradient(const CoefficientOracle& oracle, std::int64_t m_limit,
                       const PolydiscPoint& z, std::int64_t p) {
  if (p < 1 || p > m_limit) throw std::out_of_range("p out of range");
  const BlockLayout& layout = oracle.layout();
  const auto loc = layout.locate(p);
  if (!loc) return {0.0, 0.0};
  const std::int64_t off =
      layout.offsets[static_cast<std::size_t>(loc->block) - 1];
  const std::int64_t cap = std::min(
      layout.sizes[static_cast<std::size_t>(loc->block) - 1], m_limit - off);
  CompensatedComplexSum acc;
  for (std::int64_t jl = 1; jl <= cap; ++jl) {
    const std::int64_t j = off + jl;
    acc.add((oracle(p, j) + oracle(j, p)) * z.coord(j));
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Random-sampling bound search
// ---------------------------------------------------------------------------

namespace {

double sample_modulus(const CoefficientOracle& oracle, std::int64_t m_limit,
                      const RandomSampling& strat, std::int64_t i,
                      PolydiscPoint* point_out = nullptr) {
  const std::uint64_t s = SplitMix64::mix(strat.seed, static_cast<std::uint64_t>(i));
  PolydiscPoint p = strat.interior
                        ? PolydiscPoint::random_interior(m_limit, s)
                        : PolydiscPoint::random_torus(m_limit, s);
  const double v = std::abs(eval_quadratic_section(oracle, m_limit, p).value);
  if (point_out) *point_out = std::move(p);
  return v;
}

BoundSearchResult sampling_search(const CoefficientOracle& oracle,
                                  std::int64_t m_limit,
                                  const RandomSampling& strat, bool parallel) {
  if (strat.samples < 1) throw std::invalid_argument("samples must be >= 1");
  double best = -1.0;
  std::int64_t best_idx = 0;

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      double local_best = -1.0;
      std::int64_t local_idx = 0;
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i < strat.samples; ++i) {
        const double v = sample_modulus(oracle, m_limit, strat, i);
        if (v > local_best || (v == local_best && i < local_idx)) {
          local_best = v;
          local_idx = i;
        }
      }
#pragma omp critical
      {
        if (local_best > best ||
            (local_best == best && local_idx < best_idx)) {
          best = local_best;
          best_idx = local_idx;
        }
      }
    }
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (std::int64_t i = 0; i < strat.samples; ++i) {
      const double v = sample_modulus(oracle, m_limit, strat, i);
      if (v > best) {
        best = v;
        best_idx = i;
      }
    }
  }

  BoundSearchResult result;
  PolydiscPoint argmax;
  result.best_modulus = sample_modulus(oracle, m_limit, strat, best_idx, &argmax);
  result.argmax = std::move(argmax);
  result.iterations = strat.samples;
  result.certified_bound = oracle.certified_bound();
  return result;
}

// ---------------------------------------------------------------------------
// Phase coordinate ascent
// ---------------------------------------------------------------------------

// |A e^{2 i t} + B e^{i t} + C0|
double phase_objective(const cplx& a, const cplx& b, const cplx& c0,
                       double theta) {
  const cplx e1 = unit_phase(theta);
  return std::abs(a * e1 * e1 + b * e1 + c0);
}

double refine_phase(const cplx& a, const cplx& b, const cplx& c0, double lo,
                    double hi) {
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = phase_objective(a, b, c0, x1);
  double f2 = phase_objective(a, b, c0, x2);
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = phase_objective(a, b, c0, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = phase_objective(a, b, c0, x1);
    }
  }
  return 0.5 * (lo + hi);
}

BoundSearchResult ascent_search(const CoefficientOracle& oracle,
                                std::int64_t m_limit,
                                const PhaseCoordinateAscent& strat) {
  if (strat.sweeps < 1 || strat.phase_grid < 8 || strat.restarts < 1) {
    throw std::invalid_argument("invalid ascent parameters");
  }
  const double two_pi = 2.0 * std::numbers::pi;

  BoundSearchResult result;
  result.best_modulus = -1.0;
  result.certified_bound = oracle.certified_bound();

  for (int restart = 0; restart < strat.restarts; ++restart) {
    PolydiscPoint z =
        restart == 0
            ? PolydiscPoint{std::vector<cplx>(static_cast<std::size_t>(m_limit),
                                              cplx{1.0, 0.0}),
                            PolydiscPoint::Tail::ones}
            : PolydiscPoint::random_torus(
                  m_limit, SplitMix64::mix(strat.seed, 1000 + restart));

    cplx current = eval_quadratic_section(oracle, m_limit, z).value;
    double current_mod = std::abs(current);

    for (int sweep = 0; sweep < strat.sweeps; ++sweep) {
      const double before = current_mod;
      for (std::int64_t p = 1; p <= m_limit; ++p) {
        const cplx a = oracle(p, p);
        const cplx zp = z.coord(p);
        // gradient includes the j = p term 2 a_pp z_p
        const cplx b = analytic_gradient(oracle, m_limit, z, p) - 2.0 * a * zp;
        const cplx c0 = current - a * zp * zp - b * zp;

        double best_theta = std::arg(zp);
        double best_val = phase_objective(a, b, c0, best_theta);
        const double step = two_pi / strat.phase_grid;
        for (int k = 0; k < strat.phase_grid; ++k) {
          const double theta = k * step;
          const double v = phase_objective(a, b, c0, theta);
          if (v > best_val) {
            best_val = v;
            best_theta = theta;
          }
        }
        best_theta = refine_phase(a, b, c0, best_theta - step, best_theta + step);

        const cplx znew = unit_phase(best_theta);
        z.prefix[static_cast<std::size_t>(p) - 1] = znew;
        current = a * znew * znew + b * znew + c0;
        current_mod = std::abs(current);
        ++result.iterations;
      }
      // re-anchor against incremental drift
      current = eval_quadratic_section(oracle, m_limit, z).value;
      current_mod = std::abs(current);
      if (current_mod - before < 1e-13) break;
    }

    if (current_mod > result.best_modulus) {
      result.best_modulus = current_mod;
      result.argmax = z;
    }
  }
  return result;
}

}  // namespace

BoundSearchResult bound_search(const CoefficientOracle& oracle,
                               std::int64_t m_limit,
                               const BoundSearchStrategy& strategy) {
  if (m_limit < 1) throw std::invalid_argument("m_limit must be >= 1");
  if (const auto* s = std::get_if<RandomSampling>(&strategy)) {
    return sampling_search(oracle, m_limit, *s, s->parallel);
  }
  return ascent_search(oracle, m_limit,
                       std::get<PhaseCoordinateAscent>(strategy));
}

BoundSearchResult bound_search_serial(const CoefficientOracle& oracle,
                                      std::int64_t m_limit,
                                      const RandomSampling& strategy) {
  if (m_limit < 1) throw std::invalid_argument("m_limit must be >= 1");
  return sampling_search(oracle, m_limit, strategy, /*parallel=*/false);
}

// ---------------------------------------------------------------------------
// Uniform tail bound
// ---------------------------------------------------------------------------

TailBoundReport uniform_tail_bound(const CoefficientOracle& oracle,
                                   std::int64_t m_limit_small,
                                   std::int64_t m_limit_large,
                                   std::int64_t samples, std::uint64_t seed) {
  if (m_limit_small > m_limit_large) {
    throw std::invalid_argument("m_limit_small must be <= m_limit_large");
  }
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const BlockLayout& layout = oracle.layout();
  auto block_of_corner = [&](std::int64_t corner) {
    if (corner == 0) return 0;
    for (int b = 1; b <= layout.block_count(); ++b) {
      if (layout.block_end(b) == corner) return b;
    }
    throw std::invalid_argument("corner is not block-aligned");
  };
  const int b_small = block_of_corner(m_limit_small);
  const int b_large = block_of_corner(m_limit_large);

  TailBoundReport report;
  report.samples = samples;
  for (int b = b_small + 1; b <= b_large; ++b) {
    report.analytic_tail += oracle.block_bound(b);
  }

  double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst)
#endif
  for (std::int64_t i = 0; i < samples; ++i) {
    const PolydiscPoint p = PolydiscPoint::random_torus(
        m_limit_large, SplitMix64::mix(seed, static_cast<std::uint64_t>(i)));
    const double gap =
        std::abs(eval_quadratic_section(oracle, m_limit_large, p).value -
                 eval_quadratic_section(oracle, m_limit_small, p).value);
    if (gap > worst) worst = gap;
  }
  report.empirical_sup = worst;
  return report;
}

}  // namespace torusq
