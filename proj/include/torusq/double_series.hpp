#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace torusq {

// Pure term oracle a_mn for a generic double series, 1-based.
using TermOracle = std::function<std::complex<double>(std::int64_t, std::int64_t)>;

// Fixed-order (row-major) compensated rectangular partial sum s_MN; empty
// limits give 0.
std::complex<double> rectangular_sum(const TermOracle& terms,
                                     std::int64_t m_limit,
                                     std::int64_t n_limit);

enum class SeriesClassification { absolute, regular, pringsheim, undetermined };

std::string classification_name(SeriesClassification c);

struct CauchyViolation {
  std::int64_t p = 0, q = 0, m = 0, n = 0;
  double gap = 0.0;  // |s_PQ - s_MN|
};

// All verdicts are window-relative: a finite scan corroborates or refutes
// convergence only up to the scanned corner.
struct SeriesDiagnosis {
  SeriesClassification classification = SeriesClassification::undetermined;
  double epsilon = 0.0;
  std::int64_t mu_witness = -1;  // least mu passing the window check, -1 if none
  std::int64_t scan_corner = 0;
  std::vector<bool> row_ok;  // row m converged within the window (1-based -1)
  std::vector<bool> col_ok;
  std::optional<CauchyViolation> worst_violation;
};

// Windowed Pringsheim Cauchy check: least mu such that |s_PQ - s_MN| < eps
// for all P > M >= mu, Q > N >= mu within the corner.
SeriesDiagnosis pringsheim_diagnose(const TermOracle& terms, double epsilon,
                                    std::int64_t corner_max);
SeriesDiagnosis pringsheim_diagnose_serial(const TermOracle& terms,
                                           double epsilon,
                                           std::int64_t corner_max);

// Pringsheim check plus a single-series Cauchy scan of every row and column
// within the window.
SeriesDiagnosis regular_diagnose(const TermOracle& terms, double epsilon,
                                 std::int64_t corner_max);

// Full classification: absolute when the |a_mn| series passes the regular
// window check, else regular, else pringsheim, else undetermined.
SeriesDiagnosis classify(const TermOracle& terms, double epsilon,
                         std::int64_t corner_max);

// max over corners of |s_MN(a+b) - s_MN(a) - s_MN(b)|
double additivity_check(const TermOracle& a, const TermOracle& b,
                        std::int64_t corner_max);

// Terms of the Fourier expansion of a quadratic-form oracle at a fixed
// torus point, for feeding the diagnostics above.
class CoefficientOracle;
TermOracle form_terms_at(const CoefficientOracle& oracle,
                         const std::vector<std::complex<double>>& z);

}  // namespace torusq
