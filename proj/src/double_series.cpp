#include "torusq/double_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torusq/oracles.hpp"
#include "torusq/summation.hpp"

namespace torusq {

namespace {

using cd = std::complex<double>;

// s_MN for all 0 <= M, N <= corner; row-major accumulation, row sums
// compensated.
std::vector<cd> partial_sum_table(const TermOracle& terms,
                                  std::int64_t corner) {
  const std::size_t w = static_cast<std::size_t>(corner) + 1;
  std::vector<cd> s(w * w, cd{0.0, 0.0});
  for (std::int64_t m = 1; m <= corner; ++m) {
    CompensatedComplexSum row;
    for (std::int64_t n = 1; n <= corner; ++n) {
      row.add(terms(m, n));
      s[static_cast<std::size_t>(m) * w + static_cast<std::size_t>(n)] =
          s[static_cast<std::size_t>(m - 1) * w + static_cast<std::size_t>(n)] +
          row.value();
    }
  }
  return s;
}

struct WindowBest {
  double gap = -1.0;
  CauchyViolation quad;
};

// larger gap wins; ties broken by lexicographically smallest quadruple
bool better(const WindowBest& a, const WindowBest& b) {
  if (a.gap != b.gap) return a.gap > b.gap;
  const auto ta = std::tuple(a.quad.m, a.quad.n, a.quad.p, a.quad.q);
  const auto tb = std::tuple(b.quad.m, b.quad.n, b.quad.p, b.quad.q);
  return ta < tb;
}

SeriesDiagnosis pringsheim_impl(const TermOracle& terms, double epsilon,
                                std::int64_t corner, bool parallel) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
  if (corner < 2) throw std::invalid_argument("corner_max must be >= 2");

  const auto s = partial_sum_table(terms, corner);
  const std::size_t w = static_cast<std::size_t>(corner) + 1;
  auto at = [&](std::int64_t m, std::int64_t n) {
    return s[static_cast<std::size_t>(m) * w + static_cast<std::size_t>(n)];
  };

  // worst gap per mu-key min(M, N); suffix max over keys gives the window
  // verdict for every mu at once
  std::vector<WindowBest> best(static_cast<std::size_t>(corner), WindowBest{});

  auto scan_row = [&](std::int64_t m, std::vector<WindowBest>& local) {
    for (std::int64_t n = 1; n < corner; ++n) {
      const cd base = at(m, n);
      WindowBest cell;
      for (std::int64_t p = m + 1; p <= corner; ++p) {
        for (std::int64_t q = n + 1; q <= corner; ++q) {
          const double gap = std::abs(at(p, q) - base);
          if (gap > cell.gap) {
            cell.gap = gap;
            cell.quad = CauchyViolation{p, q, m, n, gap};
          }
        }
      }
      auto& slot = local[static_cast<std::size_t>(std::min(m, n)) - 1];
      if (better(cell, slot)) slot = cell;
    }
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<WindowBest> local(static_cast<std::size_t>(corner),
                                    WindowBest{});
#pragma omp for schedule(dynamic) nowait
      for (std::int64_t m = 1; m < corner; ++m) scan_row(m, local);
#pragma omp critical
      for (std::size_t k = 0; k < local.size(); ++k) {
        if (better(local[k], best[k])) best[k] = local[k];
      }
    }
#else
    parallel = false;
#endif
  }
  if (!parallel) {
    for (std::int64_t m = 1; m < corner; ++m) scan_row(m, best);
  }

  // suffix max: worst gap over windows with min index >= mu
  std::vector<WindowBest> suffix(best.size());
  WindowBest acc;
  for (std::size_t k = best.size(); k-- > 0;) {
    if (better(best[k], acc)) acc = best[k];
    suffix[k] = acc;
  }

  SeriesDiagnosis diag;
  diag.epsilon = epsilon;
  diag.scan_corner = corner;
  for (std::int64_t mu = 1; mu < corner; ++mu) {
    if (suffix[static_cast<std::size_t>(mu) - 1].gap < epsilon) {
      diag.mu_witness = mu;
      break;
    }
  }
  if (diag.mu_witness >= 0) {
    diag.classification = SeriesClassification::pringsheim;
    if (suffix[0].gap >= 0.0) diag.worst_violation = suffix[0].quad;
  } else {
    diag.classification = SeriesClassification::undetermined;
    // persisting violation at the largest scannable window
    diag.worst_violation = suffix[static_cast<std::size_t>(corner) - 2].quad;
  }
  return diag;
}

// windowed Cauchy check of a single sequence of partial sums
bool single_series_ok(const std::vector<cd>& partial, double epsilon) {
  // partial[i] = sum of the first i+1 terms; check that some mu makes all
  // later pairwise gaps small
  const std::size_t n = partial.size();
  std::vector<double> worst(n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double g = -1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      g = std::max(g, std::abs(partial[j] - partial[i]));
    }
    worst[i] = g;
  }
  // the last index has no later pairs; an empty window is not a witness
  double suffix = -1.0;
  for (std::size_t i = n - 1; i-- > 0;) {
    suffix = std::max(suffix, worst[i]);
    if (suffix < epsilon) return true;
  }
  return false;
}

}  // namespace

std::string classification_name(SeriesClassification c) {
  switch (c) {
    case SeriesClassification::absolute:
      return "absolute";
    case SeriesClassification::regular:
      return "regular";
    case SeriesClassification::pringsheim:
      return "pringsheim";
    case SeriesClassification::undetermined:
      return "undetermined";
  }
  return "unknown";
}

cd rectangular_sum(const TermOracle& terms, std::int64_t m_limit,
                   std::int64_t n_limit) {
  if (m_limit < 0 || n_limit < 0) {
    throw std::invalid_argument("limits must be >= 0");
  }
  CompensatedComplexSum acc;
  for (std::int64_t m = 1; m <= m_limit; ++m) {
    for (std::int64_t n = 1; n <= n_limit; ++n) {
      acc.add(terms(m, n));
    }
  }
  return acc.value();
}

SeriesDiagnosis pringsheim_diagnose(const TermOracle& terms, double epsilon,
                                    std::int64_t corner_max) {
  return pringsheim_impl(terms, epsilon, corner_max, /*parallel=*/true);
}

SeriesDiagnosis pringsheim_diagnose_serial(const TermOracle& terms,
                                           double epsilon,
                                           std::int64_t corner_max) {
  return pringsheim_impl(terms, epsilon, corner_max, /*parallel=*/false);
}

SeriesDiagnosis regular_diagnose(const TermOracle& terms, double epsilon,
                                 std::int64_t corner_max) {
  SeriesDiagnosis diag = pringsheim_diagnose(terms, epsilon, corner_max);
  diag.row_ok.resize(static_cast<std::size_t>(corner_max));
  diag.col_ok.resize(static_cast<std::size_t>(corner_max));
  bool all_ok = true;
  for (std::int64_t i = 1; i <= corner_max; ++i) {
    std::vector<cd> row(static_cast<std::size_t>(corner_max));
    std::vector<cd> col(static_cast<std::size_t>(corner_max));
    CompensatedComplexSum racc, cacc;
    for (std::int64_t j = 1; j <= corner_max; ++j) {
      racc.add(terms(i, j));
      cacc.add(terms(j, i));
      row[static_cast<std::size_t>(j) - 1] = racc.value();
      col[static_cast<std::size_t>(j) - 1] = cacc.value();
    }
    const bool r = single_series_ok(row, epsilon);
    const bool c = single_series_ok(col, epsilon);
    diag.row_ok[static_cast<std::size_t>(i) - 1] = r;
    diag.col_ok[static_cast<std::size_t>(i) - 1] = c;
    all_ok = all_ok && r && c;
  }
  if (diag.classification == SeriesClassification::pringsheim && all_ok) {
    diag.classification = SeriesClassification::regular;
  } else if (!all_ok) {
    diag.classification = SeriesClassification::undetermined;
  }
  return diag;
}

SeriesDiagnosis classify(const TermOracle& terms, double epsilon,
                         std::int64_t corner_max) {
  TermOracle moduli = [&terms](std::int64_t m, std::int64_t n) {
    return cd{std::abs(terms(m, n)), 0.0};
  };
  SeriesDiagnosis abs_diag = regular_diagnose(moduli, epsilon, corner_max);
  SeriesDiagnosis diag = regular_diagnose(terms, epsilon, corner_max);
  if (abs_diag.classification == SeriesClassification::regular &&
      diag.classification != SeriesClassification::undetermined) {
    diag.classification = SeriesClassification::absolute;
  }
  return diag;
}

double additivity_check(const TermOracle& a, const TermOracle& b,
                        std::int64_t corner_max) {
  if (corner_max < 1) throw std::invalid_argument("corner_max must be >= 1");
  TermOracle sum = [&a, &b](std::int64_t m, std::int64_t n) {
    return a(m, n) + b(m, n);
  };
  const auto sa = partial_sum_table(a, corner_max);
  const auto sb = partial_sum_table(b, corner_max);
  const auto sab = partial_sum_table(sum, corner_max);
  double worst = 0.0;
  for (std::size_t i = 0; i < sab.size(); ++i) {
    const double dev = std::abs(sab[i] - sa[i] - sb[i]);
    worst = std::max(worst, dev / (1.0 + std::abs(sab[i])));
  }
  return worst;
}

TermOracle form_terms_at(const CoefficientOracle& oracle,
                         const std::vector<std::complex<double>>& z) {
  auto coord = [z](std::int64_t j) {
    return j <= static_cast<std::int64_t>(z.size())
               ? z[static_cast<std::size_t>(j) - 1]
               : cd{1.0, 0.0};
  };
  return [oracle, coord](std::int64_t m, std::int64_t n) {
    return oracle(m, n) * coord(m) * coord(n);
  };
}

}  // namespace torusq
