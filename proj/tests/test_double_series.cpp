#include <doctest.h>

#include <cmath>

#include "torusq/double_series.hpp"
#include "torusq/oracles.hpp"
#include "torusq/polydisc.hpp"
#include "torusq/summation.hpp"

using namespace torusq;

namespace {

const TermOracle geometric_terms = [](std::int64_t m, std::int64_t n) {
  return cplx{std::pow(2.0, -static_cast<double>(m + n)), 0.0};
};

const TermOracle oscillating_terms = [](std::int64_t m, std::int64_t n) {
  return cplx{((m + n) % 2 == 0) ? 1.0 : -1.0, 0.0};
};

double geometric_closed_form(std::int64_t m, std::int64_t n) {
  return (1.0 - std::pow(2.0, -static_cast<double>(m))) *
         (1.0 - std::pow(2.0, -static_cast<double>(n)));
}

}  // namespace

TEST_CASE("rectangular sums") {
  SUBCASE("single-term oracle") {
    const TermOracle single = [](std::int64_t m, std::int64_t n) {
      return cplx{(m == 1 && n == 1) ? 1.0 : 0.0, 0.0};
    };
    CHECK(rectangular_sum(single, 1, 1) == cplx{1.0, 0.0});
    CHECK(rectangular_sum(single, 7, 3) == cplx{1.0, 0.0});
  }
  SUBCASE("empty corner convention") {
    CHECK(rectangular_sum(geometric_terms, 0, 5) == cplx{0.0, 0.0});
    CHECK(rectangular_sum(geometric_terms, 5, 0) == cplx{0.0, 0.0});
  }
  SUBCASE("geometric product closed form") {
    for (std::int64_t m : {1, 3, 10}) {
      for (std::int64_t n : {2, 6, 12}) {
        CHECK(rectangular_sum(geometric_terms, m, n).real() ==
              doctest::Approx(geometric_closed_form(m, n)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("form terms at all ones match the section evaluator") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::inverse_square());
    const TermOracle terms = form_terms_at(oracle, {});
    for (std::int64_t corner : {4, 11, 20}) {
      const cplx via_series = rectangular_sum(terms, corner, corner);
      const cplx via_section =
          eval_quadratic_section(oracle, corner, PolydiscPoint::all_ones())
              .value;
      CHECK(std::abs(via_series - via_section) <= 1e-12);
    }
  }
}

TEST_CASE("pringsheim diagnostics") {
  SUBCASE("geometric series passes with a small witness") {
    const auto diag = pringsheim_diagnose(geometric_terms, 1e-3, 32);
    CHECK(diag.classification == SeriesClassification::pringsheim);
    CHECK(diag.mu_witness >= 1);
    CHECK(diag.mu_witness <= 12);
  }
  SUBCASE("oscillating series is undetermined with a unit-size witness") {
    const auto diag = pringsheim_diagnose(oscillating_terms, 0.5, 24);
    CHECK(diag.classification == SeriesClassification::undetermined);
    CHECK(diag.mu_witness == -1);
    REQUIRE(diag.worst_violation.has_value());
    CHECK(diag.worst_violation->gap >= 1.0);
  }
  SUBCASE("parallel scan equals the serial reference") {
    const auto par = pringsheim_diagnose(geometric_terms, 1e-4, 24);
    const auto ser = pringsheim_diagnose_serial(geometric_terms, 1e-4, 24);
    CHECK(par.classification == ser.classification);
    CHECK(par.mu_witness == ser.mu_witness);
    REQUIRE(par.worst_violation.has_value());
    REQUIRE(ser.worst_violation.has_value());
    CHECK(par.worst_violation->gap == ser.worst_violation->gap);
    CHECK(par.worst_violation->p == ser.worst_violation->p);
    CHECK(par.worst_violation->q == ser.worst_violation->q);
  }
  SUBCASE("window monotonicity: enlarging the corner keeps violations") {
    // any mu that fails at a small corner must still fail when the scan
    // window only grows
    const auto small = pringsheim_diagnose(oscillating_terms, 0.5, 12);
    const auto large = pringsheim_diagnose(oscillating_terms, 0.5, 24);
    CHECK(small.classification == SeriesClassification::undetermined);
    CHECK(large.classification == SeriesClassification::undetermined);
    CHECK(large.worst_violation->gap >= small.worst_violation->gap);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(pringsheim_diagnose(geometric_terms, 0.0, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(pringsheim_diagnose(geometric_terms, 1e-2, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("regular diagnostics") {
  SUBCASE("geometric series is regular") {
    const auto diag = regular_diagnose(geometric_terms, 1e-3, 24);
    CHECK(diag.classification == SeriesClassification::regular);
    for (bool ok : diag.row_ok) CHECK(ok);
    for (bool ok : diag.col_ok) CHECK(ok);
  }
  SUBCASE("a divergent row blocks regular convergence") {
    // row 1 carries alternating unit terms; adjacent partial sums differ by
    // 1 in every window, so no tail of the row is Cauchy at this epsilon
    const TermOracle alternating_row = [](std::int64_t m, std::int64_t n) {
      return cplx{m == 1 ? (n % 2 == 0 ? 1.0 : -1.0) : 0.0, 0.0};
    };
    const auto diag = regular_diagnose(alternating_row, 0.5, 64);
    CHECK_FALSE(diag.row_ok[0]);
    CHECK(diag.classification == SeriesClassification::undetermined);
  }
  SUBCASE("completely bounded form terms have convergent rows") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::inverse_square());
    const TermOracle moduli = [&oracle](std::int64_t m, std::int64_t n) {
      return cplx{std::abs(oracle(m, n)), 0.0};
    };
    const auto diag = regular_diagnose(moduli, 1e-2, 20);
    for (bool ok : diag.row_ok) CHECK(ok);
  }
}

TEST_CASE("classification chain") {
  SUBCASE("absolute implies regular implies pringsheim on the same window") {
    const auto abs_diag = classify(geometric_terms, 1e-3, 24);
    CHECK(abs_diag.classification == SeriesClassification::absolute);
    CHECK(regular_diagnose(geometric_terms, 1e-3, 24).classification ==
          SeriesClassification::regular);
    CHECK(pringsheim_diagnose(geometric_terms, 1e-3, 24).classification ==
          SeriesClassification::pringsheim);
  }
  SUBCASE("row and column iterated sums agree at the corner") {
    const std::int64_t corner = 24;
    CompensatedComplexSum by_rows, by_cols;
    for (std::int64_t m = 1; m <= corner; ++m) {
      CompensatedComplexSum row, col;
      for (std::int64_t n = 1; n <= corner; ++n) {
        row.add(geometric_terms(m, n));
        col.add(geometric_terms(n, m));
      }
      by_rows.add(row.value());
      by_cols.add(col.value());
    }
    CHECK(std::abs(by_rows.value() - by_cols.value()) <= 1e-10);
  }
}

TEST_CASE("additivity of rectangular sums") {
  SUBCASE("built-in pair") {
    CHECK(additivity_check(geometric_terms, oscillating_terms, 24) <= 1e-12);
  }
  SUBCASE("oracle plus its negation") {
    const TermOracle neg = [](std::int64_t m, std::int64_t n) {
      return -geometric_terms(m, n);
    };
    const TermOracle sum = [&](std::int64_t m, std::int64_t n) {
      return geometric_terms(m, n) + neg(m, n);
    };
    CHECK(std::abs(rectangular_sum(sum, 16, 16)) == 0.0);
  }
  SUBCASE("separate blocks versus the composite") {
    const auto composite = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::geometric());
    const TermOracle block1 = [&](std::int64_t m, std::int64_t n) {
      return (m <= 4 && n <= 4) ? composite(m, n) : cplx{0.0, 0.0};
    };
    const TermOracle block2 = [&](std::int64_t m, std::int64_t n) {
      return (m > 4 || n > 4) ? composite(m, n) : cplx{0.0, 0.0};
    };
    for (std::int64_t corner : {4, 12, 20}) {
      const cplx split = rectangular_sum(block1, corner, corner) +
                         rectangular_sum(block2, corner, corner);
      const cplx whole = rectangular_sum(
          [&](std::int64_t m, std::int64_t n) { return composite(m, n); },
          corner, corner);
      CHECK(std::abs(split - whole) <= 1e-15);
    }
  }
}
