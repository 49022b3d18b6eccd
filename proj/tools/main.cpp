#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "torusq/double_series.hpp"
#include "torusq/fourier.hpp"
#include "torusq/io.hpp"
#include "torusq/oracles.hpp"
#include "torusq/polydisc.hpp"
#include "torusq/rng.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace torusq;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string family = "toeplitz";
  std::string weights = "inverse-square";
  int alpha = 1;
  int n_base = 3;
  int mu = 1;
  int blocks = 3;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string format = "csv";
  std::string out;
};

void add_oracle_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--family", opt.family, "matrix family")
      ->check(CLI::IsMember({"toeplitz", "littlewood"}));
  cmd->add_option("--weights", opt.weights,
                  "toeplitz block weights mu_alpha")
      ->check(CLI::IsMember({"inverse-square", "geometric"}));
  cmd->add_option("--alpha", opt.alpha, "toeplitz recursion depth");
  cmd->add_option("--n", opt.n_base, "littlewood root-of-unity order N");
  cmd->add_option("--mu", opt.mu, "littlewood block level");
  cmd->add_option("--blocks", opt.blocks, "number of composite blocks");
}

void add_output_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opt.out, "output path (stdout when omitted)");
}

WeightSequence make_weights(const CommonOptions& opt) {
  return opt.weights == "geometric" ? WeightSequence::geometric()
                                    : WeightSequence::inverse_square();
}

CoefficientOracle make_composite(const CommonOptions& opt) {
  if (opt.family == "littlewood") {
    return CoefficientOracle::littlewood_composite(opt.n_base, opt.blocks);
  }
  return CoefficientOracle::toeplitz_composite(opt.blocks, make_weights(opt));
}

CoefficientOracle make_single(const CommonOptions& opt) {
  if (opt.family == "littlewood") {
    return CoefficientOracle::single_littlewood(opt.n_base, opt.mu);
  }
  return CoefficientOracle::single_toeplitz(opt.alpha);
}

ordered_json effective_config(const CommonOptions& opt,
                              const std::string& command) {
  ordered_json cfg;
  cfg["command"] = command;
  cfg["family"] = opt.family;
  if (opt.family == "toeplitz") {
    cfg["weights"] = opt.weights;
  } else {
    cfg["n_base"] = opt.n_base;
  }
  cfg["blocks"] = opt.blocks;
  cfg["seed"] = opt.seed;
  return cfg;
}

void emit(const CommonOptions& opt, const std::string& content) {
  if (opt.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw CLI::ValidationError("--out", "cannot open " + opt.out);
  f << content;
}

// central finite difference of the section value along real and imaginary
// perturbations of z_p
cplx finite_difference_gradient(const CoefficientOracle& oracle,
                                std::int64_t m_limit, const PolydiscPoint& z,
                                std::int64_t p, double step) {
  auto value_at = [&](cplx zp) {
    PolydiscPoint w = z;
    w.prefix[static_cast<std::size_t>(p) - 1] = zp;
    return eval_quadratic_section(oracle, m_limit, w).value;
  };
  const cplx zp = z.coord(p);
  const cplx d_re = (value_at(zp + step) - value_at(zp - step)) / (2.0 * step);
  const cplx d_im = (value_at(zp + cplx{0.0, step}) -
                     value_at(zp - cplx{0.0, step})) /
                    (2.0 * step);
  // holomorphic in z_p, so both directional derivatives must agree
  const cplx via_im = d_im / cplx{0.0, 1.0};
  return 0.5 * (d_re + via_im);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_gen_matrix(const CommonOptions& opt, std::int64_t max_dim) {
  std::string content;
  std::int64_t dim = 0;
  if (opt.family == "toeplitz") {
    ToeplitzSpec spec{opt.alpha};
    dim = spec.dimension();
    if (dim > max_dim) {
      std::cerr << "dimension " << dim << " exceeds guard " << max_dim << "\n";
      return kExitUsage;
    }
    content = opt.format == "json" ? matrix_json(spec) : matrix_csv(spec);
  } else {
    LittlewoodSpec spec{opt.n_base, opt.mu};
    dim = spec.dimension();
    if (dim > max_dim) {
      std::cerr << "dimension " << dim << " exceeds guard " << max_dim << "\n";
      return kExitUsage;
    }
    content = opt.format == "json" ? matrix_json(spec) : matrix_csv(spec);
  }
  emit(opt, content);
  std::fprintf(stderr, "dimension=%lld checksum=%016llx\n",
               static_cast<long long>(dim),
               static_cast<unsigned long long>(fnv1a(content)));
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt) {
  ordered_json report;
  report["config"] = effective_config(opt, "verify");
  bool ok = true;

  ordered_json unitarity = ordered_json::array();
  if (opt.family == "toeplitz") {
    for (int a = 1; a <= std::min(opt.blocks, 3); ++a) {
      const auto r = verify_unitary_exact(ToeplitzSpec{a});
      ordered_json row{{"alpha", a},
                       {"is_unitary", r.is_unitary},
                       {"max_deviation", r.max_deviation}};
      ok = ok && r.is_unitary;
      unitarity.push_back(std::move(row));
    }
  } else {
    for (int mu = 1; mu <= std::min(opt.blocks, 3); ++mu) {
      const auto r = verify_unitary_exact(LittlewoodSpec{opt.n_base, mu});
      ordered_json row{{"mu", mu},
                       {"is_unitary", r.is_unitary},
                       {"max_deviation", r.max_deviation}};
      ok = ok && r.is_unitary;
      unitarity.push_back(std::move(row));
    }
  }
  report["unitarity"] = std::move(unitarity);

  // sampling plus ascent against the analytic bound, per single block
  ordered_json bounds = ordered_json::array();
  for (int level = 1; level <= std::min(opt.blocks, 3); ++level) {
    CommonOptions single = opt;
    single.alpha = level;
    single.mu = level;
    const CoefficientOracle oracle = make_single(single);
    const std::int64_t dim = oracle.layout().total_dimension();
    const auto sampled = bound_search(
        oracle, dim, RandomSampling{2000, opt.seed, false, true});
    const auto climbed = bound_search(
        oracle, dim, PhaseCoordinateAscent{25, 720, opt.seed, 3});
    const double best = std::max(sampled.best_modulus, climbed.best_modulus);
    const bool pass = best <= sampled.certified_bound + opt.tol;
    ordered_json row{{"level", level},
                     {"best_modulus", best},
                     {"certified_bound", sampled.certified_bound},
                     {"pass", pass}};
    if (!pass) {
      json witness = json::array();
      const auto& arg = climbed.best_modulus >= sampled.best_modulus
                            ? climbed.argmax
                            : sampled.argmax;
      for (const cplx& z : arg.prefix) {
        witness.push_back(json::array({z.real(), z.imag()}));
      }
      row["witness"] = std::move(witness);
    }
    ok = ok && pass;
    bounds.push_back(std::move(row));
  }
  report["bound_search"] = std::move(bounds);

  // analytic gradient against central differences
  {
    const CoefficientOracle oracle = make_composite(opt);
    const std::int64_t dim = oracle.layout().total_dimension();
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t s = SplitMix64::mix(opt.seed, 500 + trial);
      PolydiscPoint z = PolydiscPoint::random_torus(dim, s);
      const std::int64_t p =
          static_cast<std::int64_t>(SplitMix64::mix(s, 7) % dim) + 1;
      const cplx analytic = analytic_gradient(oracle, dim, z, p);
      const cplx fd = finite_difference_gradient(oracle, dim, z, p, 1e-5);
      const double rel =
          std::abs(analytic - fd) / std::max(1e-12, std::abs(fd));
      worst = std::max(worst, rel);
    }
    const bool pass = worst <= 1e-6;
    report["gradient_check"] =
        ordered_json{{"trials", 20}, {"worst_relative_error", worst},
                     {"pass", pass}};
    ok = ok && pass;
  }

  report["pass"] = ok;
  emit(opt, report.dump(2) + "\n");
  return ok ? kExitOk : kExitFalsified;
}

int cmd_bound_search(const CommonOptions& opt, const std::string& mode,
                     const std::string& strategy, std::int64_t m_limit,
                     std::int64_t samples, int sweeps, int grid, int restarts,
                     bool interior) {
  const CoefficientOracle oracle =
      mode == "single" ? make_single(opt) : make_composite(opt);
  if (m_limit <= 0) m_limit = oracle.layout().total_dimension();

  BoundSearchResult result;
  if (strategy == "random") {
    result = bound_search(oracle, m_limit,
                          RandomSampling{samples, opt.seed, interior, true});
  } else {
    result = bound_search(
        oracle, m_limit, PhaseCoordinateAscent{sweeps, grid, opt.seed, restarts});
  }
  emit(opt, bound_search_json(oracle, m_limit, strategy, opt.seed, result));
  if (result.best_modulus > result.certified_bound + opt.tol) {
    std::cerr << "bound falsified: " << format_double(result.best_modulus)
              << " > " << format_double(result.certified_bound) << "\n";
    return kExitFalsified;
  }
  return kExitOk;
}

int cmd_divergence_table(const CommonOptions& opt) {
  const CoefficientOracle oracle = make_composite(opt);
  const DivergenceLedger ledger = divergence_ledger(oracle, opt.blocks);
  const ordered_json cfg = effective_config(opt, "divergence-table");
  if (opt.format == "json") {
    emit(opt, ledger_json(ledger, cfg.dump()));
  } else {
    emit(opt, ledger_csv(ledger, cfg.dump()));
  }
  return kExitOk;
}

int cmd_fourier(const CommonOptions& opt, const std::string& freq_text,
                int dump_block) {
  const CoefficientOracle oracle = make_composite(opt);
  if (dump_block > 0) {
    emit(opt, frequencies_jsonl(oracle, dump_block));
    return kExitOk;
  }
  const auto freq = MultiIndex::parse(freq_text);
  if (!freq) {
    std::cerr << "cannot parse frequency '" << freq_text << "'\n";
    return kExitUsage;
  }
  const cplx c = fourier_coefficient(oracle, *freq);
  emit(opt, format_double(c.real()) + " " + format_double(c.imag()) + "\n");
  return kExitOk;
}

int cmd_quadrature(const CommonOptions& opt, int grid, double tol) {
  const CoefficientOracle oracle = make_composite(opt);
  const double dev = quadrature_check(oracle, grid);
  emit(opt, format_double(dev) + "\n");
  if (dev > tol) {
    std::cerr << "quadrature deviation " << format_double(dev)
              << " exceeds tolerance " << format_double(tol) << "\n";
    return kExitFalsified;
  }
  return kExitOk;
}

int cmd_series(const CommonOptions& opt, const std::string& terms_name,
               double eps, std::int64_t corner) {
  TermOracle terms;
  if (terms_name == "geometric") {
    terms = [](std::int64_t m, std::int64_t n) {
      return cplx{std::pow(2.0, -static_cast<double>(m + n)), 0.0};
    };
  } else if (terms_name == "oscillating") {
    terms = [](std::int64_t m, std::int64_t n) {
      return cplx{((m + n) % 2 == 0) ? 1.0 : -1.0, 0.0};
    };
  } else {
    const CoefficientOracle oracle = make_composite(opt);
    const std::int64_t dim = oracle.layout().total_dimension();
    const PolydiscPoint z = PolydiscPoint::random_torus(dim, opt.seed);
    terms = form_terms_at(oracle, z.prefix);
  }
  const SeriesDiagnosis diag = classify(terms, eps, corner);
  emit(opt, diagnosis_json(diag));
  return kExitOk;
}

int cmd_gradient_check(const CommonOptions& opt, int count, double step,
                       double rel_tol) {
  const CoefficientOracle oracle = make_composite(opt);
  const std::int64_t dim = oracle.layout().total_dimension();
  double worst = 0.0;
  std::int64_t worst_p = 0;
  for (int trial = 0; trial < count; ++trial) {
    const std::uint64_t s = SplitMix64::mix(opt.seed, trial);
    PolydiscPoint z = PolydiscPoint::random_torus(dim, s);
    const std::int64_t p =
        static_cast<std::int64_t>(SplitMix64::mix(s, 13) % dim) + 1;
    const cplx analytic = analytic_gradient(oracle, dim, z, p);
    const cplx fd = finite_difference_gradient(oracle, dim, z, p, step);
    const double rel = std::abs(analytic - fd) / std::max(1e-12, std::abs(fd));
    if (rel > worst) {
      worst = rel;
      worst_p = p;
    }
  }
  ordered_json report{{"config", effective_config(opt, "gradient-check")},
                      {"trials", count},
                      {"step", step},
                      {"worst_relative_error", worst},
                      {"worst_p", worst_p},
                      {"pass", worst <= rel_tol}};
  emit(opt, report.dump(2) + "\n");
  return worst <= rel_tol ? kExitOk : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic forms on the infinite torus: oracles, bounds, "
               "Fourier ledgers"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOptions opt;
  std::int64_t max_dim = 4096;
  std::string mode = "single";
  std::string strategy = "ascent";
  std::int64_t m_limit = 0;
  std::int64_t samples = 10000;
  int sweeps = 25;
  int grid = 720;
  int restarts = 1;
  bool interior = false;
  std::string freq_text;
  int dump_block = 0;
  int quad_grid = 5;
  std::string terms_name = "form";
  double eps = 1e-2;
  std::int64_t corner = 32;
  int grad_count = 100;
  double grad_step = 1e-5;
  double grad_tol = 1e-6;

  auto* gen = app.add_subcommand("gen-matrix", "export a single block matrix");
  add_oracle_options(gen, opt);
  add_output_options(gen, opt);
  gen->add_option("--max-dim", max_dim, "materialization guard");

  auto* verify = app.add_subcommand(
      "verify", "unitarity, bound and gradient checks; exit 1 on a witness");
  add_oracle_options(verify, opt);
  add_output_options(verify, opt);
  verify->add_option("--seed", opt.seed);
  verify->add_option("--tol", opt.tol);

  auto* bound = app.add_subcommand("bound-search",
                                   "search the polydisc for the max modulus");
  add_oracle_options(bound, opt);
  add_output_options(bound, opt);
  bound->add_option("--mode", mode)->check(CLI::IsMember({"single", "composite"}));
  bound->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"random", "ascent"}));
  bound->add_option("--m-limit", m_limit, "section corner (0 = full layout)");
  bound->add_option("--samples", samples);
  bound->add_option("--sweeps", sweeps);
  bound->add_option("--grid", grid);
  bound->add_option("--restarts", restarts);
  bound->add_flag("--interior", interior, "sample inside the disc");
  bound->add_option("--seed", opt.seed);
  bound->add_option("--tol", opt.tol);

  auto* ledger = app.add_subcommand("divergence-table",
                                    "coefficient-mass ledger vs sup bound");
  add_oracle_options(ledger, opt);
  add_output_options(ledger, opt);
  ledger->add_option("--seed", opt.seed);

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients");
  add_oracle_options(fourier, opt);
  add_output_options(fourier, opt);
  fourier->add_option("--freq", freq_text, "frequency, e.g. e1+e2 or 2e3");
  fourier->add_option("--dump-block", dump_block,
                      "emit all frequencies of a block as JSON lines");

  auto* quad = app.add_subcommand(
      "quadrature", "block-1 DFT deviation from the analytic coefficients");
  add_oracle_options(quad, opt);
  add_output_options(quad, opt);
  quad->add_option("--grid", quad_grid, "grid points per dimension");
  double quad_tol = 1e-10;
  quad->add_option("--tol", quad_tol);

  auto* series = app.add_subcommand("series", "double-series diagnostics");
  add_oracle_options(series, opt);
  add_output_options(series, opt);
  series->add_option("--terms", terms_name)
      ->check(CLI::IsMember({"form", "geometric", "oscillating"}));
  series->add_option("--eps", eps);
  series->add_option("--corner", corner);
  series->add_option("--seed", opt.seed);

  auto* grad = app.add_subcommand("gradient-check",
                                  "analytic gradient vs central differences");
  add_oracle_options(grad, opt);
  add_output_options(grad, opt);
  grad->add_option("--count", grad_count);
  grad->add_option("--step", grad_step);
  grad->add_option("--tol", grad_tol);
  grad->add_option("--seed", opt.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (opt.family == "littlewood" && opt.n_base <= 2) {
      std::cerr << "littlewood family requires --n > 2\n";
      return kExitUsage;
    }
    if (gen->parsed()) return cmd_gen_matrix(opt, max_dim);
    if (verify->parsed()) return cmd_verify(opt);
    if (bound->parsed()) {
      return cmd_bound_search(opt, mode, strategy, m_limit, samples, sweeps,
                              grid, restarts, interior);
    }
    if (ledger->parsed()) return cmd_divergence_table(opt);
    if (fourier->parsed()) return cmd_fourier(opt, freq_text, dump_block);
    if (quad->parsed()) return cmd_quadrature(opt, quad_grid, quad_tol);
    if (series->parsed()) return cmd_series(opt, terms_name, eps, corner);
    if (grad->parsed()) return cmd_gradient_check(opt, grad_count, grad_step,
                                                  grad_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
