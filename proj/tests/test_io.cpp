#include <doctest.h>

#include <nlohmann/json.hpp>

#include "torusq/io.hpp"

using namespace torusq;
using nlohmann::json;

TEST_CASE("double formatting round-trips") {
  for (double v : {1.0 / 3.0, 49.0 / 36.0, 1.6449340668482264, 1e-300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("matrix exports") {
  SUBCASE("depth-1 toeplitz CSV") {
    CHECK(matrix_csv(ToeplitzSpec{1}) ==
          "-1,1,1,1\n1,-1,1,1\n1,1,-1,1\n1,1,1,-1\n");
  }
  SUBCASE("littlewood N=3 exponent table") {
    CHECK(matrix_csv(LittlewoodSpec{3, 1}) == "1,2,0\n2,1,0\n0,0,0\n");
  }
  SUBCASE("JSON schema") {
    const json doc = json::parse(matrix_json(LittlewoodSpec{3, 1}));
    CHECK(doc["dimension"] == 3);
    CHECK(doc["mu"] == 1);
    CHECK(doc["exponents"][0][1] == 2);
    const json tdoc = json::parse(matrix_json(ToeplitzSpec{1}));
    CHECK(tdoc["alpha"] == 1);
    CHECK(tdoc["entries"][0][0] == -1);
  }
}

TEST_CASE("ledger exports") {
  const auto oracle =
      CoefficientOracle::toeplitz_composite(2, WeightSequence::geometric());
  const auto ledger = divergence_ledger(oracle, 2);

  const std::string csv = ledger_csv(ledger, "");
  CHECK(csv.rfind("block,block_mass,cumulative,sup_bound\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);

  const json doc = json::parse(ledger_json(ledger, R"({"blocks":2})"));
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["block_mass"] == 1.0);
  CHECK(doc["config"]["blocks"] == 2);
}

TEST_CASE("frequency JSON lines") {
  const auto oracle = CoefficientOracle::littlewood_composite(3, 1);
  const std::string lines = frequencies_jsonl(oracle, 1);
  int count = 0;
  std::size_t start = 0;
  while (start < lines.size()) {
    const std::size_t end = lines.find('\n', start);
    const json line = json::parse(lines.substr(start, end - start));
    CHECK(line.contains("support"));
    CHECK(line.contains("re"));
    CHECK(line.contains("im"));
    ++count;
    start = end + 1;
  }
  CHECK(count == 6);
}

TEST_CASE("diagnosis export") {
  SeriesDiagnosis diag;
  diag.classification = SeriesClassification::pringsheim;
  diag.epsilon = 1e-3;
  diag.mu_witness = 4;
  diag.scan_corner = 32;
  diag.worst_violation = CauchyViolation{10, 11, 2, 3, 0.5};
  const json doc = json::parse(diagnosis_json(diag));
  CHECK(doc["classification"] == "pringsheim");
  CHECK(doc["mu_witness"] == 4);
  CHECK(doc["violations"][0]["P"] == 10);
}
