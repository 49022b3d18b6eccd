#include "torusq/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torusq {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (std::int64_t{1} << 62) / base) {
      throw std::overflow_error("dimension overflow");
    }
    r *= base;
  }
  return r;
}

void check_index(std::int64_t m, std::int64_t dim, const char* what) {
  if (m < 1 || m > dim) {
    throw std::out_of_range(std::string(what) + " index out of range");
  }
}

constexpr double kPiSquaredOverSix = 1.6449340668482264;

}  // namespace

std::int64_t ToeplitzSpec::dimension() const {
  if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
  return ipow(4, alpha);
}

std::int64_t LittlewoodSpec::dimension() const {
  if (n_base <= 2) throw std::invalid_argument("n_base must be > 2");
  if (mu < 1) throw std::invalid_argument("mu must be >= 1");
  return ipow(n_base, mu);
}

int toeplitz_entry(const ToeplitzSpec& spec, std::int64_t m, std::int64_t n) {
  const std::int64_t dim = spec.dimension();
  check_index(m, dim, "row");
  check_index(n, dim, "column");
  std::int64_t a = m - 1;
  std::int64_t b = n - 1;
  int sign = 1;
  for (int i = 0; i < spec.alpha; ++i) {
    if ((a & 3) == (b & 3)) sign = -sign;
    a >>= 2;
    b >>= 2;
  }
  return sign;
}

int littlewood_exponent(const LittlewoodSpec& spec, std::int64_t m,
                        std::int64_t n) {
  const std::int64_t dim = spec.dimension();
  check_index(m, dim, "row");
  check_index(n, dim, "column");
  const int N = spec.n_base;
  std::int64_t a = m - 1;
  std::int64_t b = n - 1;
  std::int64_t acc = 0;
  for (int i = 0; i < spec.mu; ++i) {
    const std::int64_t r = (a % N) + 1;
    const std::int64_t s = (b % N) + 1;
    acc = (acc + r * s) % N;
    a /= N;
    b /= N;
  }
  return static_cast<int>(acc);
}

cplx root_of_unity(int exponent, int n_base) {
  const double theta =
      2.0 * std::numbers::pi * static_cast<double>(exponent) / n_base;
  return {std::cos(theta), std::sin(theta)};
}

// ---------------------------------------------------------------------------
// BlockLayout
// ---------------------------------------------------------------------------

BlockLayout BlockLayout::from_sizes(std::vector<std::int64_t> sizes) {
  BlockLayout layout;
  layout.offsets.push_back(0);
  std::int64_t off = 0;
  for (std::int64_t s : sizes) {
    if (s <= 0) throw std::invalid_argument("block sizes must be positive");
    off += s;
    layout.offsets.push_back(off);
  }
  layout.sizes = std::move(sizes);
  return layout;
}

std::int64_t BlockLayout::total_dimension() const {
  return offsets.empty() ? 0 : offsets.back();
}

std::optional<BlockLayout::Location> BlockLayout::locate(
    std::int64_t m) const {
  if (m < 1) throw std::out_of_range("index must be >= 1");
  for (int b = 0; b < block_count(); ++b) {
    if (m <= offsets[static_cast<std::size_t>(b) + 1]) {
      return Location{b + 1, m - offsets[static_cast<std::size_t>(b)]};
    }
  }
  return std::nullopt;
}

std::int64_t BlockLayout::block_end(int block) const {
  if (block < 1 || block > block_count()) {
    throw std::out_of_range("block out of range");
  }
  return offsets[static_cast<std::size_t>(block)];
}

// ---------------------------------------------------------------------------
// WeightSequence
// ---------------------------------------------------------------------------

WeightSequence WeightSequence::inverse_square() {
  WeightSequence w;
  w.kind_ = WeightKind::inverse_square;
  return w;
}

WeightSequence WeightSequence::geometric() {
  WeightSequence w;
  w.kind_ = WeightKind::geometric;
  return w;
}

WeightSequence WeightSequence::littlewood_fixed(int n_base) {
  if (n_base <= 2) throw std::invalid_argument("n_base must be > 2");
  WeightSequence w;
  w.kind_ = WeightKind::littlewood_fixed;
  w.n_base_ = n_base;
  return w;
}

WeightSequence WeightSequence::custom(std::vector<double> values,
                                      bool summable_asserted) {
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("custom weights must be nonnegative");
    }
  }
  WeightSequence w;
  w.kind_ = WeightKind::custom;
  w.values_ = std::move(values);
  w.summable_asserted_ = summable_asserted;
  return w;
}

double WeightSequence::value(int block) const {
  if (block < 1) throw std::out_of_range("block must be >= 1");
  const double a = static_cast<double>(block);
  switch (kind_) {
    case WeightKind::inverse_square:
      return 1.0 / (a * a);
    case WeightKind::geometric:
      return std::pow(2.0, -a);
    case WeightKind::littlewood_fixed:
      return std::pow(static_cast<double>(n_base_), -1.5 * a) / (a * a);
    case WeightKind::custom:
      if (block > static_cast<int>(values_.size())) {
        throw std::out_of_range("custom weight index past configured list");
      }
      return values_[static_cast<std::size_t>(block) - 1];
  }
  throw std::logic_error("unreachable");
}

double WeightSequence::series_sum() const {
  switch (kind_) {
    case WeightKind::inverse_square:
      return kPiSquaredOverSix;
    case WeightKind::geometric:
      return 1.0;
    case WeightKind::littlewood_fixed: {
      // sum N^{-3mu/2}/mu^2, geometric-dominated; a few hundred terms hit
      // double precision
      double s = 0.0;
      for (int mu = 200; mu >= 1; --mu) s += value(mu);
      return s;
    }
    case WeightKind::custom: {
      double s = 0.0;
      for (double v : values_) s += v;
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

bool WeightSequence::summable() const {
  return kind_ == WeightKind::custom ? summable_asserted_ : true;
}

// ---------------------------------------------------------------------------
// CoefficientOracle
// ---------------------------------------------------------------------------

std::string family_name(OracleFamily family) {
  switch (family) {
    case OracleFamily::toeplitz_composite:
      return "toeplitz_composite";
    case OracleFamily::littlewood_composite:
      return "littlewood_composite";
    case OracleFamily::single_toeplitz_block:
      return "single_toeplitz_block";
    case OracleFamily::single_littlewood_block:
      return "single_littlewood_block";
    case OracleFamily::custom:
      return "custom";
  }
  return "unknown";
}

CoefficientOracle CoefficientOracle::toeplitz_composite(
    int alpha_max, WeightSequence weights) {
  if (alpha_max < 1) throw std::invalid_argument("alpha_max must be >= 1");
  if (weights.kind() == WeightKind::littlewood_fixed) {
    throw std::invalid_argument("littlewood_fixed weights need n_base");
  }
  if (!weights.summable()) {
    throw std::invalid_argument("weight series must be summable");
  }
  CoefficientOracle o;
  o.family_ = OracleFamily::toeplitz_composite;
  o.alpha_max_ = alpha_max;
  o.weights_ = std::move(weights);
  std::vector<std::int64_t> sizes;
  for (int a = 1; a <= alpha_max; ++a) sizes.push_back(ipow(4, a));
  o.layout_ = BlockLayout::from_sizes(std::move(sizes));
  return o;
}

CoefficientOracle CoefficientOracle::littlewood_composite(int n_base,
                                                          int mu_max) {
  if (n_base <= 2) throw std::invalid_argument("n_base must be > 2");
  if (mu_max < 1) throw std::invalid_argument("mu_max must be >= 1");
  CoefficientOracle o;
  o.family_ = OracleFamily::littlewood_composite;
  o.n_base_ = n_base;
  o.mu_max_ = mu_max;
  o.weights_ = WeightSequence::littlewood_fixed(n_base);
  std::vector<std::int64_t> sizes;
  for (int mu = 1; mu <= mu_max; ++mu) sizes.push_back(ipow(n_base, mu));
  o.layout_ = BlockLayout::from_sizes(std::move(sizes));
  return o;
}

CoefficientOracle CoefficientOracle::single_toeplitz(int alpha) {
  ToeplitzSpec spec{alpha};
  CoefficientOracle o;
  o.family_ = OracleFamily::single_toeplitz_block;
  o.alpha_max_ = alpha;
  o.weights_ = WeightSequence::custom({1.0}, true);
  o.layout_ = BlockLayout::from_sizes({spec.dimension()});
  return o;
}

CoefficientOracle CoefficientOracle::single_littlewood(int n_base, int mu) {
  LittlewoodSpec spec{n_base, mu};
  CoefficientOracle o;
  o.family_ = OracleFamily::single_littlewood_block;
  o.n_base_ = n_base;
  o.mu_max_ = mu;
  o.weights_ = WeightSequence::custom({1.0}, true);
  o.layout_ = BlockLayout::from_sizes({spec.dimension()});
  return o;
}

CoefficientOracle CoefficientOracle::custom(
    BlockLayout layout, WeightSequence weights,
    std::function<cplx(int, std::int64_t, std::int64_t)> entry) {
  if (!entry) throw std::invalid_argument("custom oracle needs an entry fn");
  CoefficientOracle o;
  o.family_ = OracleFamily::custom;
  o.layout_ = std::move(layout);
  o.weights_ = std::move(weights);
  o.custom_entry_ = std::move(entry);
  return o;
}

CoefficientOracle::Entry CoefficientOracle::coefficient(std::int64_t m,
                                                        std::int64_t n) const {
  const auto lm = layout_.locate(m);
  const auto ln = layout_.locate(n);
  if (!lm || !ln) return Entry{{0.0, 0.0}, true};
  if (lm->block != ln->block) return Entry{{0.0, 0.0}, false};
  const int block = lm->block;
  switch (family_) {
    case OracleFamily::toeplitz_composite: {
      ToeplitzSpec spec{block};
      const double scale =
          weights_.value(block) / std::pow(8.0, static_cast<double>(block));
      return Entry{{scale * toeplitz_entry(spec, lm->local, ln->local), 0.0},
                   false};
    }
    case OracleFamily::littlewood_composite: {
      LittlewoodSpec spec{n_base_, block};
      const int k = littlewood_exponent(spec, lm->local, ln->local);
      return Entry{weights_.value(block) * root_of_unity(k, n_base_), false};
    }
    case OracleFamily::single_toeplitz_block: {
      ToeplitzSpec spec{alpha_max_};
      return Entry{
          {static_cast<double>(toeplitz_entry(spec, lm->local, ln->local)),
           0.0},
          false};
    }
    case OracleFamily::single_littlewood_block: {
      LittlewoodSpec spec{n_base_, mu_max_};
      const int k = littlewood_exponent(spec, lm->local, ln->local);
      return Entry{root_of_unity(k, n_base_), false};
    }
    case OracleFamily::custom:
      return Entry{
          weights_.value(block) * custom_entry_(block, lm->local, ln->local),
          false};
  }
  throw std::logic_error("unreachable");
}

double CoefficientOracle::block_bound(int block) const {
  switch (family_) {
    case OracleFamily::toeplitz_composite:
      // weight/8^a times |C_a| <= 8^a
      return weights_.value(block);
    case OracleFamily::littlewood_composite:
      // N^{-3mu/2}/mu^2 times |M_mu| <= N^{3mu/2}
      return 1.0 / (static_cast<double>(block) * block);
    case OracleFamily::single_toeplitz_block:
      return std::pow(8.0, static_cast<double>(alpha_max_));
    case OracleFamily::single_littlewood_block:
      return std::pow(static_cast<double>(n_base_), 1.5 * mu_max_);
    case OracleFamily::custom: {
      // crude l1 bound, all |entries| <= 1 by contract
      const double s =
          static_cast<double>(layout_.sizes[static_cast<std::size_t>(block) - 1]);
      return weights_.value(block) * s * s;
    }
  }
  throw std::logic_error("unreachable");
}

double CoefficientOracle::certified_bound() const {
  switch (family_) {
    case OracleFamily::toeplitz_composite:
      return weights_.series_sum();
    case OracleFamily::littlewood_composite:
      return kPiSquaredOverSix;  // sum 1/mu^2
    case OracleFamily::single_toeplitz_block:
    case OracleFamily::single_littlewood_block:
      return block_bound(1);
    case OracleFamily::custom: {
      double s = 0.0;
      for (int b = 1; b <= layout_.block_count(); ++b) s += block_bound(b);
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

double CoefficientOracle::block_l1_mass_closed_form(int block) const {
  const double a = static_cast<double>(block);
  switch (family_) {
    case OracleFamily::toeplitz_composite:
      // mu_a * 16^a / 8^a = 2^a mu_a
      return std::pow(2.0, a) * weights_.value(block);
    case OracleFamily::littlewood_composite:
      // weight * N^{2mu} = N^{mu/2}/mu^2
      return std::pow(static_cast<double>(n_base_), 0.5 * a) / (a * a);
    case OracleFamily::single_toeplitz_block:
      return std::pow(16.0, static_cast<double>(alpha_max_));
    case OracleFamily::single_littlewood_block:
      return std::pow(static_cast<double>(n_base_), 2.0 * mu_max_);
    case OracleFamily::custom:
      throw std::logic_error("no closed form for custom oracles");
  }
  throw std::logic_error("unreachable");
}

std::string CoefficientOracle::name() const {
  std::string s = family_name(family_);
  switch (family_) {
    case OracleFamily::toeplitz_composite:
      s += "(alpha_max=" + std::to_string(alpha_max_) + ")";
      break;
    case OracleFamily::littlewood_composite:
      s += "(N=" + std::to_string(n_base_) +
           ",mu_max=" + std::to_string(mu_max_) + ")";
      break;
    case OracleFamily::single_toeplitz_block:
      s += "(alpha=" + std::to_string(alpha_max_) + ")";
      break;
    case OracleFamily::single_littlewood_block:
      s += "(N=" + std::to_string(n_base_) + ",mu=" + std::to_string(mu_max_) +
           ")";
      break;
    case OracleFamily::custom:
      break;
  }
  return s;
}

}  // namespace torusq
