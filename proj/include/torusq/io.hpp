#pragma once

#include <cstdint>
#include <string>

#include "torusq/double_series.hpp"
#include "torusq/fourier.hpp"
#include "torusq/oracles.hpp"
#include "torusq/polydisc.hpp"

namespace torusq {

// 17 significant digits, round-trip exact
std::string format_double(double v);

std::uint64_t fnv1a(const std::string& data);

// matrix exports (rows of +-1 signs, or exponent integers), LF endings
std::string matrix_csv(const ToeplitzSpec& spec);
std::string matrix_csv(const LittlewoodSpec& spec);
std::string matrix_json(const ToeplitzSpec& spec);
std::string matrix_json(const LittlewoodSpec& spec);

// ledger: block,block_mass,cumulative,sup_bound
std::string ledger_csv(const DivergenceLedger& ledger,
                       const std::string& config_line);
std::string ledger_json(const DivergenceLedger& ledger,
                        const std::string& config_json);

std::string bound_search_json(const CoefficientOracle& oracle,
                              std::int64_t m_limit,
                              const std::string& strategy_name,
                              std::uint64_t seed,
                              const BoundSearchResult& result);

std::string diagnosis_json(const SeriesDiagnosis& diag);

// JSON lines {"support": [[pos, val], ...], "re": ..., "im": ...}
std::string frequencies_jsonl(const CoefficientOracle& oracle, int block);

}  // namespace torusq
