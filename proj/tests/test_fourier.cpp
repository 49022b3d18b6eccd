#include <doctest.h>

#include <cmath>
#include <map>

#include "torusq/fourier.hpp"
#include "torusq/oracles.hpp"
#include "torusq/rng.hpp"

using namespace torusq;

TEST_CASE("multi-index canonical form and parsing") {
  const auto p = MultiIndex::from_terms({{3, 1}, {1, 2}, {3, -1}});
  CHECK(p.support.size() == 1);
  CHECK(p.support[0] == std::pair<std::int64_t, std::int64_t>{1, 2});
  CHECK(p.total_degree() == 2);

  CHECK(MultiIndex::parse("e1+e2") ==
        MultiIndex::from_terms({{1, 1}, {2, 1}}));
  CHECK(MultiIndex::parse("2e3") == MultiIndex::from_terms({{3, 2}}));
  CHECK(MultiIndex::parse("e1-e4") ==
        MultiIndex::from_terms({{1, 1}, {4, -1}}));
  CHECK(MultiIndex::parse("0") == MultiIndex::zero());
  CHECK_FALSE(MultiIndex::parse("e0").has_value());
  CHECK_FALSE(MultiIndex::parse("garbage").has_value());

  CHECK(MultiIndex::parse("2e3")->to_string() == "2e3");
  CHECK(MultiIndex::from_terms({{1, 1}, {4, -1}}).to_string() == "e1-e4");
}

TEST_CASE("fourier trichotomy") {
  const auto oracle =
      CoefficientOracle::toeplitz_composite(3, WeightSequence::geometric());

  CHECK(fourier_coefficient(oracle, *MultiIndex::parse("e1+e2")) ==
        cplx{0.125, 0.0});
  CHECK(fourier_coefficient(oracle, *MultiIndex::parse("e1")) ==
        cplx{0.0, 0.0});
  CHECK(fourier_coefficient(oracle, *MultiIndex::parse("2e1")) ==
        cplx{-1.0 / 16.0, 0.0});
  // degree two but with a negative entry
  CHECK(fourier_coefficient(oracle, *MultiIndex::parse("e1-e2")) ==
        cplx{0.0, 0.0});
}

TEST_CASE("frequency enumeration") {
  SUBCASE("counts") {
    const auto toeplitz = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::inverse_square());
    int count = 0;
    enumerate_block_frequencies(toeplitz, 1,
                                [&](const MultiIndex&, cplx) { ++count; });
    CHECK(count == 10);  // C(4,2) pairs + 4 diagonal

    const auto littlewood = CoefficientOracle::littlewood_composite(3, 1);
    count = 0;
    enumerate_block_frequencies(littlewood, 1,
                                [&](const MultiIndex&, cplx) { ++count; });
    CHECK(count == 6);
  }
  SUBCASE("stream agrees with the trichotomy") {
    const auto oracle = CoefficientOracle::littlewood_composite(3, 2);
    enumerate_block_frequencies(oracle, 2, [&](const MultiIndex& p, cplx v) {
      CHECK(fourier_coefficient(oracle, p) == v);
    });
  }
  SUBCASE("each frequency appears exactly once") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::geometric());
    std::map<std::string, int> seen;
    enumerate_block_frequencies(
        oracle, 2, [&](const MultiIndex& p, cplx) { ++seen[p.to_string()]; });
    CHECK(seen.size() == 16 * 15 / 2 + 16);
    for (const auto& [key, n] : seen) CHECK(n == 1);
  }
  SUBCASE("out-of-range block") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::geometric());
    CHECK_THROWS_AS(
        enumerate_block_frequencies(oracle, 3, [](const MultiIndex&, cplx) {}),
        std::out_of_range);
  }
}

TEST_CASE("random frequencies of wrong degree vanish") {
  const auto oracle = CoefficientOracle::toeplitz_composite(
      3, WeightSequence::inverse_square());
  SplitMix64 gen(12345);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    const int parts = 1 + static_cast<int>(gen.next() % 3);
    std::int64_t degree = 0;
    for (int t = 0; t < parts; ++t) {
      const std::int64_t pos = 1 + static_cast<std::int64_t>(gen.next() % 90);
      std::int64_t val =
          static_cast<std::int64_t>(gen.next() % 7) - 3;  // in [-3, 3]
      if (val == 0) val = 3;
      terms.emplace_back(pos, val);
      degree += val;
    }
    const MultiIndex p = MultiIndex::from_terms(terms);
    const bool trichotomy_shape =
        (p.support.size() == 1 && p.support[0].second == 2) ||
        (p.support.size() == 2 && p.support[0].second == 1 &&
         p.support[1].second == 1);
    if (!trichotomy_shape) {
      CHECK(fourier_coefficient(oracle, p) == cplx{0.0, 0.0});
    }
  }
}

TEST_CASE("quadrature oracle on block 1") {
  SUBCASE("toeplitz") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        2, WeightSequence::inverse_square());
    CHECK(quadrature_check(oracle, 5) <= 1e-10);
  }
  SUBCASE("littlewood") {
    const auto oracle = CoefficientOracle::littlewood_composite(3, 2);
    CHECK(quadrature_check(oracle, 5) <= 1e-10);
  }
  SUBCASE("parallel equals serial") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        1, WeightSequence::geometric());
    CHECK(quadrature_check(oracle, 6) == quadrature_check_serial(oracle, 6));
  }
  SUBCASE("grid validation") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        1, WeightSequence::geometric());
    CHECK_THROWS_AS(quadrature_check(oracle, 4), std::invalid_argument);
    // 4^16 grid blows the evaluation guard
    const auto big = CoefficientOracle::single_toeplitz(2);
    CHECK_THROWS_AS(quadrature_check(big, 5), std::invalid_argument);
  }
}

TEST_CASE("divergence ledger") {
  SUBCASE("inverse-square cumulative row values") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        3, WeightSequence::inverse_square());
    const auto ledger = divergence_ledger(oracle, 7);
    REQUIRE(ledger.rows.size() == 7);
    // closed-form accumulation of 2^a / a^2
    double expected = 0.0;
    for (int a = 1; a <= 7; ++a) {
      expected += std::pow(2.0, a) / (static_cast<double>(a) * a);
      CHECK(ledger.rows[a - 1].cumulative ==
            doctest::Approx(expected).epsilon(1e-12));
      if (a > 1) {
        CHECK(ledger.rows[a - 1].cumulative >
              ledger.rows[a - 2].cumulative);
      }
    }
    CHECK(ledger.rows[6].cumulative > 10.0);
    CHECK(ledger.rows[5].cumulative < 10.0);
    CHECK(ledger.sup_bound == doctest::Approx(1.6449340668482264));
  }
  SUBCASE("enumerated masses match closed forms") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        3, WeightSequence::inverse_square());
    for (int b = 1; b <= 3; ++b) {
      const double mass = block_l1_mass_enumerated(oracle, b);
      CHECK(mass == doctest::Approx(oracle.block_l1_mass_closed_form(b))
                        .epsilon(1e-12));
      CHECK(mass == block_l1_mass_enumerated_serial(oracle, b));
    }
  }
  SUBCASE("geometric weights give unit block masses") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        3, WeightSequence::geometric());
    const auto ledger = divergence_ledger(oracle, 5);
    for (const auto& row : ledger.rows) {
      CHECK(row.block_mass == 1.0);
    }
    CHECK(ledger.rows[4].cumulative == 5.0);
  }
  SUBCASE("littlewood masses") {
    const auto oracle = CoefficientOracle::littlewood_composite(3, 3);
    const auto ledger = divergence_ledger(oracle, 3);
    CHECK(ledger.rows[0].block_mass ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(ledger.rows[1].block_mass == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(ledger.rows[2].block_mass ==
          doctest::Approx(std::pow(3.0, 1.5) / 9.0).epsilon(1e-12));
  }
  SUBCASE("empty ledger") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        1, WeightSequence::geometric());
    const auto ledger = divergence_ledger(oracle, 0);
    CHECK(ledger.rows.empty());
  }
  SUBCASE("guard falls back to closed form") {
    const auto oracle = CoefficientOracle::toeplitz_composite(
        3, WeightSequence::geometric());
    const auto ledger = divergence_ledger(oracle, 3, /*enumeration_guard=*/16);
    CHECK(ledger.rows[0].enumerated);
    CHECK(ledger.rows[1].enumerated);
    CHECK_FALSE(ledger.rows[2].enumerated);
    CHECK(ledger.rows[2].block_mass == ledger.rows[2].closed_form);
  }
}
