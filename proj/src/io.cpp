#include "torusq/io.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace torusq {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string matrix_csv(const ToeplitzSpec& spec) {
  const std::int64_t dim = spec.dimension();
  std::string out;
  for (std::int64_t m = 1; m <= dim; ++m) {
    for (std::int64_t n = 1; n <= dim; ++n) {
      if (n > 1) out += ',';
      out += std::to_string(toeplitz_entry(spec, m, n));
    }
    out += '\n';
  }
  return out;
}

std::string matrix_csv(const LittlewoodSpec& spec) {
  const std::int64_t dim = spec.dimension();
  std::string out;
  for (std::int64_t m = 1; m <= dim; ++m) {
    for (std::int64_t n = 1; n <= dim; ++n) {
      if (n > 1) out += ',';
      out += std::to_string(littlewood_exponent(spec, m, n));
    }
    out += '\n';
  }
  return out;
}

std::string matrix_json(const ToeplitzSpec& spec) {
  const std::int64_t dim = spec.dimension();
  ordered_json doc;
  doc["family"] = "toeplitz";
  doc["alpha"] = spec.alpha;
  doc["dimension"] = dim;
  json rows = json::array();
  for (std::int64_t m = 1; m <= dim; ++m) {
    json row = json::array();
    for (std::int64_t n = 1; n <= dim; ++n) {
      row.push_back(toeplitz_entry(spec, m, n));
    }
    rows.push_back(std::move(row));
  }
  doc["entries"] = std::move(rows);
  return doc.dump() + "\n";
}

std::string matrix_json(const LittlewoodSpec& spec) {
  const std::int64_t dim = spec.dimension();
  ordered_json doc;
  doc["family"] = "littlewood";
  doc["n_base"] = spec.n_base;
  doc["mu"] = spec.mu;
  doc["dimension"] = dim;
  json rows = json::array();
  for (std::int64_t m = 1; m <= dim; ++m) {
    json row = json::array();
    for (std::int64_t n = 1; n <= dim; ++n) {
      row.push_back(littlewood_exponent(spec, m, n));
    }
    rows.push_back(std::move(row));
  }
  doc["exponents"] = std::move(rows);
  return doc.dump() + "\n";
}

std::string ledger_csv(const DivergenceLedger& ledger,
                       const std::string& config_line) {
  std::string out;
  if (!config_line.empty()) out += "# " + config_line + "\n";
  out += "block,block_mass,cumulative,sup_bound\n";
  for (const LedgerRow& row : ledger.rows) {
    out += std::to_string(row.block) + ',' + format_double(row.block_mass) +
           ',' + format_double(row.cumulative) + ',' +
           format_double(ledger.sup_bound) + '\n';
  }
  return out;
}

std::string ledger_json(const DivergenceLedger& ledger,
                        const std::string& config_json) {
  ordered_json doc;
  if (!config_json.empty()) doc["config"] = json::parse(config_json);
  doc["sup_bound"] = ledger.sup_bound;
  ordered_json rows = ordered_json::array();
  for (const LedgerRow& row : ledger.rows) {
    ordered_json r;
    r["block"] = row.block;
    r["block_mass"] = row.block_mass;
    r["closed_form"] = row.closed_form;
    r["cumulative"] = row.cumulative;
    r["enumerated"] = row.enumerated;
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string bound_search_json(const CoefficientOracle& oracle,
                              std::int64_t m_limit,
                              const std::string& strategy_name,
                              std::uint64_t seed,
                              const BoundSearchResult& result) {
  ordered_json doc;
  doc["oracle"] = oracle.name();
  doc["m_limit"] = m_limit;
  doc["strategy"] = strategy_name;
  doc["seed"] = seed;
  doc["best_modulus"] = result.best_modulus;
  doc["certified_bound"] = result.certified_bound;
  doc["iterations"] = result.iterations;
  json argmax = json::array();
  for (const cplx& z : result.argmax.prefix) {
    argmax.push_back(json::array({z.real(), z.imag()}));
  }
  doc["argmax_prefix"] = std::move(argmax);
  return doc.dump(2) + "\n";
}

std::string diagnosis_json(const SeriesDiagnosis& diag) {
  ordered_json doc;
  doc["classification"] = classification_name(diag.classification);
  doc["epsilon"] = diag.epsilon;
  doc["mu_witness"] = diag.mu_witness;
  doc["corner"] = diag.scan_corner;
  ordered_json violations = ordered_json::array();
  if (diag.worst_violation) {
    const CauchyViolation& v = *diag.worst_violation;
    ordered_json entry;
    entry["P"] = v.p;
    entry["Q"] = v.q;
    entry["M"] = v.m;
    entry["N"] = v.n;
    entry["gap"] = v.gap;
    violations.push_back(std::move(entry));
  }
  doc["violations"] = std::move(violations);
  return doc.dump(2) + "\n";
}

std::string frequencies_jsonl(const CoefficientOracle& oracle, int block) {
  std::string out;
  enumerate_block_frequencies(
      oracle, block, [&out](const MultiIndex& p, cplx value) {
        ordered_json line;
        json support = json::array();
        for (const auto& [pos, val] : p.support) {
          support.push_back(json::array({pos, val}));
        }
        line["support"] = std::move(support);
        line["re"] = value.real();
        line["im"] = value.imag();
        out += line.dump() + "\n";
      });
  return out;
}

}  // namespace torusq
