#include "torusq/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "torusq/summation.hpp"

namespace torusq {

// ---------------------------------------------------------------------------
// MultiIndex
// ---------------------------------------------------------------------------

MultiIndex MultiIndex::from_terms(
    std::vector<std::pair<std::int64_t, std::int64_t>> terms) {
  std::map<std::int64_t, std::int64_t> acc;
  for (const auto& [pos, val] : terms) {
    if (pos < 1) throw std::invalid_argument("positions must be >= 1");
    acc[pos] += val;
  }
  MultiIndex p;
  for (const auto& [pos, val] : acc) {
    if (val != 0) p.support.emplace_back(pos, val);
  }
  return p;
}

std::optional<MultiIndex> MultiIndex::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "0") return MultiIndex::zero();
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;
  std::size_t i = 0;
  while (i < text.size()) {
    std::int64_t sign = 1;
    if (text[i] == '+') {
      ++i;
    } else if (text[i] == '-') {
      sign = -1;
      ++i;
    }
    std::int64_t coef = 1;
    std::size_t digits = 0;
    std::int64_t num = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      num = num * 10 + (text[i] - '0');
      ++digits;
      ++i;
    }
    if (digits > 0) coef = num;
    if (i >= text.size() || text[i] != 'e') return std::nullopt;
    ++i;
    std::int64_t pos = 0;
    digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      pos = pos * 10 + (text[i] - '0');
      ++digits;
      ++i;
    }
    if (digits == 0 || pos < 1) return std::nullopt;
    terms.emplace_back(pos, sign * coef);
  }
  if (terms.empty()) return std::nullopt;
  return from_terms(std::move(terms));
}

std::string MultiIndex::to_string() const {
  if (support.empty()) return "0";
  std::string out;
  for (const auto& [pos, val] : support) {
    if (!out.empty() && val > 0) out += '+';
    if (val == -1) {
      out += '-';
    } else if (val != 1) {
      out += std::to_string(val);
    }
    out += 'e';
    out += std::to_string(pos);
  }
  return out;
}

std::int64_t MultiIndex::total_degree() const {
  std::int64_t d = 0;
  for (const auto& [pos, val] : support) d += std::abs(val);
  return d;
}

// ---------------------------------------------------------------------------
// Trichotomy
// ---------------------------------------------------------------------------

cplx fourier_coefficient(const CoefficientOracle& oracle, const MultiIndex& p) {
  if (p.support.size() == 1) {
    const auto& [m, val] = p.support.front();
    if (val == 2) return oracle(m, m);
    return {0.0, 0.0};
  }
  if (p.support.size() == 2) {
    const auto& [m, vm] = p.support[0];
    const auto& [n, vn] = p.support[1];
    if (vm == 1 && vn == 1) return 2.0 * oracle(m, n);
    return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

void enumerate_block_frequencies(
    const CoefficientOracle& oracle, int block,
    const std::function<void(const MultiIndex&, cplx)>& sink) {
  const BlockLayout& layout = oracle.layout();
  if (block < 1 || block > layout.block_count()) {
    throw std::out_of_range("block out of range");
  }
  const std::int64_t off = layout.offsets[static_cast<std::size_t>(block) - 1];
  const std::int64_t size = layout.sizes[static_cast<std::size_t>(block) - 1];
  for (std::int64_t ml = 1; ml <= size; ++ml) {
    const std::int64_t m = off + ml;
    for (std::int64_t nl = ml + 1; nl <= size; ++nl) {
      const std::int64_t n = off + nl;
      sink(MultiIndex::from_terms({{m, 1}, {n, 1}}), 2.0 * oracle(m, n));
    }
    sink(MultiIndex::from_terms({{m, 2}}), oracle(m, m));
  }
}

// ---------------------------------------------------------------------------
// Ledger
// ---------------------------------------------------------------------------

namespace {

double block_l1_mass_impl(const CoefficientOracle& oracle, int block,
                          bool parallel) {
  const BlockLayout& layout = oracle.layout();
  if (block < 1 || block > layout.block_count()) {
    throw std::out_of_range("block out of range");
  }
  const std::int64_t off = layout.offsets[static_cast<std::size_t>(block) - 1];
  const std::int64_t size = layout.sizes[static_cast<std::size_t>(block) - 1];

  // Off-diagonal frequencies carry 2|a_mn| once per unordered pair and the
  // diagonal |a_mm|, which together equal the full matrix mass. Row sums are
  // computed independently and merged in index order so the serial and
  // parallel paths agree bit for bit.
  std::vector<double> row_mass(static_cast<std::size_t>(size));
  auto row_sum = [&](std::int64_t ml) {
    CompensatedSum acc;
    for (std::int64_t nl = 1; nl <= size; ++nl) {
      acc.add(std::abs(oracle(off + ml, off + nl)));
    }
    return acc.value();
  };
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t ml = 1; ml <= size; ++ml) {
      row_mass[static_cast<std::size_t>(ml) - 1] = row_sum(ml);
    }
  } else {
    for (std::int64_t ml = 1; ml <= size; ++ml) {
      row_mass[static_cast<std::size_t>(ml) - 1] = row_sum(ml);
    }
  }
  CompensatedSum total;
  for (double r : row_mass) total.add(r);
  return total.value();
}

}  // namespace

double block_l1_mass_enumerated(const CoefficientOracle& oracle, int block) {
  return block_l1_mass_impl(oracle, block, /*parallel=*/true);
}

double block_l1_mass_enumerated_serial(const CoefficientOracle& oracle,
                                       int block) {
  return block_l1_mass_impl(oracle, block, /*parallel=*/false);
}

DivergenceLedger divergence_ledger(const CoefficientOracle& oracle,
                                   int blocks_max,
                                   std::int64_t enumeration_guard) {
  if (blocks_max < 0) throw std::invalid_argument("blocks_max must be >= 0");
  DivergenceLedger ledger;
  ledger.sup_bound = oracle.certified_bound();
  CompensatedSum cumulative;
  const BlockLayout& layout = oracle.layout();
  for (int b = 1; b <= blocks_max; ++b) {
    LedgerRow row;
    row.block = b;
    row.closed_form = oracle.block_l1_mass_closed_form(b);
    const bool configured = b <= layout.block_count();
    const bool small_enough =
        configured &&
        layout.sizes[static_cast<std::size_t>(b) - 1] <= enumeration_guard;
    if (small_enough) {
      row.block_mass = block_l1_mass_enumerated(oracle, b);
      row.enumerated = true;
    } else {
      row.block_mass = row.closed_form;
      row.enumerated = false;
    }
    cumulative.add(row.block_mass);
    row.cumulative = cumulative.value();
    ledger.rows.push_back(row);
  }
  return ledger;
}

// ---------------------------------------------------------------------------
// Quadrature oracle
// ---------------------------------------------------------------------------

namespace {

double quadrature_impl(const CoefficientOracle& oracle, int grid_points_per_dim,
                       bool parallel) {
  if (grid_points_per_dim < 5) {
    throw std::invalid_argument("grid must have at least 5 points per dim");
  }
  const BlockLayout& layout = oracle.layout();
  if (layout.block_count() < 1) throw std::invalid_argument("empty oracle");
  const int d = static_cast<int>(layout.sizes[0]);
  const std::int64_t g = grid_points_per_dim;

  std::int64_t points = 1;
  for (int j = 0; j < d; ++j) {
    points *= g;
    if (points > kQuadratureEvalGuard) {
      throw std::invalid_argument("quadrature grid guard exceeded");
    }
  }

  // e^{2 pi i q / g} lookup
  std::vector<cplx> root(static_cast<std::size_t>(g));
  for (std::int64_t q = 0; q < g; ++q) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(q) / g;
    root[static_cast<std::size_t>(q)] = {std::cos(t), std::sin(t)};
  }

  auto decode = [&](std::int64_t idx, std::vector<std::int64_t>& digits) {
    for (int j = 0; j < d; ++j) {
      digits[static_cast<std::size_t>(j)] = idx % g;
      idx /= g;
    }
  };

  // block-1 trigonometric polynomial on the full grid
  std::vector<cplx> values(static_cast<std::size_t>(points));
  {
    std::vector<std::int64_t> x(static_cast<std::size_t>(d));
    for (std::int64_t idx = 0; idx < points; ++idx) {
      decode(idx, x);
      CompensatedComplexSum acc;
      for (int m = 1; m <= d; ++m) {
        for (int n = 1; n <= d; ++n) {
          const std::int64_t q = (x[static_cast<std::size_t>(m) - 1] +
                                  x[static_cast<std::size_t>(n) - 1]) %
                                 g;
          acc.add(oracle(m, n) * root[static_cast<std::size_t>(q)]);
        }
      }
      values[static_cast<std::size_t>(idx)] = acc.value();
    }
  }

  const double inv_points = 1.0 / static_cast<double>(points);
  auto frequency_deviation = [&](std::int64_t fidx) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(d));
    decode(fidx, k);
    // DFT coefficient at k
    CompensatedComplexSum acc;
    std::vector<std::int64_t> x(static_cast<std::size_t>(d));
    for (std::int64_t idx = 0; idx < points; ++idx) {
      decode(idx, x);
      std::int64_t q = 0;
      for (int j = 0; j < d; ++j) {
        q += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      }
      // conjugate kernel
      acc.add(values[static_cast<std::size_t>(idx)] *
              std::conj(root[static_cast<std::size_t>(q % g)]));
    }
    const cplx dft = acc.value() * inv_points;

    // signed frequency (bandwidth 2 < g/2, so the aliasing map is injective)
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (int j = 0; j < d; ++j) {
      std::int64_t kj = k[static_cast<std::size_t>(j)];
      if (kj > g / 2) kj -= g;
      if (kj != 0) terms.emplace_back(j + 1, kj);
    }
    const cplx analytic =
        fourier_coefficient(oracle, MultiIndex::from_terms(std::move(terms)));
    return std::abs(dft - analytic);
  };

  double worst = 0.0;
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : worst)
#endif
    for (std::int64_t fidx = 0; fidx < points; ++fidx) {
      const double dev = frequency_deviation(fidx);
      if (dev > worst) worst = dev;
    }
  } else {
    for (std::int64_t fidx = 0; fidx < points; ++fidx) {
      worst = std::max(worst, frequency_deviation(fidx));
    }
  }
  return worst;
}

}  // namespace

double quadrature_check(const CoefficientOracle& oracle,
                        int grid_points_per_dim) {
  return quadrature_impl(oracle, grid_points_per_dim, /*parallel=*/true);
}

double quadrature_check_serial(const CoefficientOracle& oracle,
                               int grid_points_per_dim) {
  return quadrature_impl(oracle, grid_points_per_dim, /*parallel=*/false);
}

}  // namespace torusq
