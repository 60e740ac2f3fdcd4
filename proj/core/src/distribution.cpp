#include "mnm/distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mnm/errors.hpp"
#include "mnm/limits.hpp"
#include "mnm/parallel.hpp"

namespace mnm {
namespace {

constexpr double kSumTolerance = 1e-12;

int n_vars_from_size(std::size_t size, const char* what) {
  if (size < 2 || !std::has_single_bit(size)) {
    throw ParameterError(std::string(what) +
                         ": length must be a power of two, got " +
                         std::to_string(size));
  }
  return std::countr_zero(size);
}

// Neumaier-compensated accumulator for masked subset sums. Fixed iteration
// order keeps it deterministic; compensation keeps marginal/bivariate
// consistency well inside the 1e-12 contract even at N = 26.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

DistributionTable::DistributionTable(int n_vars, std::vector<double> probs,
                                     double temperature,
                                     DistributionSource source)
    : n_vars_(n_vars),
      probs_(std::move(probs)),
      temperature_(temperature),
      source_(source) {
  if (n_vars_ < 1 || n_vars_ > kMaxFullEnumerationVars) {
    throw ParameterError("DistributionTable: n_vars out of range");
  }
  if (probs_.size() != (std::size_t{1} << n_vars_)) {
    throw ParameterError("DistributionTable: need 2^n_vars entries, got " +
                         std::to_string(probs_.size()));
  }
  if (!(temperature_ > 0.0)) {
    throw ParameterError("DistributionTable: temperature must be positive");
  }
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ParameterError("DistributionTable: probabilities must be finite "
                           "and non-negative");
    }
  }
  const double total = pairwise_sum(probs_);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw ParameterError("DistributionTable: probabilities sum to " +
                         std::to_string(total) + ", expected 1 within 1e-12");
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// The contract requires strict monotonicity: values[a] > values[b] implies
// probs[a] > probs[b]. exp() and the final division can flatten sub-ulp
// value gaps onto equal probabilities, so walk the solutions in value order
// and lift any collapsed group to the next representable double. The lift
// is at most a few ulps and equal input values keep exactly equal
// probabilities.
void enforce_strict_monotonicity(std::span<const double> values,
                                 std::vector<double>& probs) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });

  double prev_prob = -1.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    double group_prob = probs[order[i]];  // equal inputs already tie exactly
    if (i > 0 && group_prob <= prev_prob) {
      group_prob =
          std::nextafter(prev_prob, std::numeric_limits<double>::infinity());
    }
    for (std::size_t k = i; k <= j; ++k) probs[order[k]] = group_prob;
    prev_prob = group_prob;
    i = j + 1;
  }
}

}  // namespace

DistributionTable boltzmann(std::span<const double> values, double temperature,
                            unsigned workers) {
  if (!(temperature > 0.0)) {
    throw ParameterError("boltzmann: temperature must be positive");
  }
  const int n = n_vars_from_size(values.size(), "boltzmann");
  double vmax = values[0];
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ParameterError("boltzmann: values must be finite");
    }
    vmax = std::max(vmax, v);
  }

  std::vector<double> probs(values.size());
  parallel_for(values.size(), workers, [&](std::size_t s) {
    probs[s] = std::exp((values[s] - vmax) / temperature);
  }, 1024);

  const double z = pairwise_sum(probs);
  parallel_for(values.size(), workers, [&](std::size_t s) { probs[s] /= z; },
               1024);

  enforce_strict_monotonicity(values, probs);
  return DistributionTable(n, std::move(probs), temperature,
                           DistributionSource::kBoltzmann);
}

UnivariateMarginals univariate_marginals(const DistributionTable& dist) {
  const int n = dist.n_vars();
  const std::vector<double>& probs = dist.probs();
  UnivariateMarginals out;
  out.p_one.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const std::uint64_t mask = std::uint64_t{1} << (i - 1);
    CompensatedSum acc;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      if (s & mask) acc.add(probs[s]);
    }
    out.p_one[static_cast<std::size_t>(i - 1)] = acc.value();
  }
  return out;
}

BivariateMarginal bivariate_marginal(const DistributionTable& dist, int i,
                                     int j) {
  const int n = dist.n_vars();
  if (i < 1 || j < 1 || i >= j || j > n) {
    throw ParameterError("bivariate_marginal: need 1 <= i < j <= N");
  }
  const std::uint64_t mask_i = std::uint64_t{1} << (i - 1);
  const std::uint64_t mask_j = std::uint64_t{1} << (j - 1);
  std::array<CompensatedSum, 4> acc;
  const std::vector<double>& probs = dist.probs();
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const int a = (s & mask_i) ? 1 : 0;
    const int b = (s & mask_j) ? 1 : 0;
    acc[static_cast<std::size_t>((a << 1) | b)].add(probs[s]);
  }
  BivariateMarginal out;
  out.i = i;
  out.j = j;
  for (int c = 0; c < 4; ++c) {
    out.cells[static_cast<std::size_t>(c)] =
        acc[static_cast<std::size_t>(c)].value();
  }
  return out;
}

DistributionTable product_distribution(const UnivariateMarginals& marginals,
                                       double temperature) {
  const int n = marginals.n_vars();
  if (n < 1 || n > kMaxFullEnumerationVars) {
    throw ResourceError("product_distribution: need 1 <= N <= " +
                        std::to_string(kMaxFullEnumerationVars));
  }
  for (double p : marginals.p_one) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParameterError("product_distribution: marginals must lie in [0,1]");
    }
  }
  std::vector<double> probs(std::size_t{1} << n);
  for (std::size_t s = 0; s < probs.size(); ++s) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      const double p1 = marginals.p_one[static_cast<std::size_t>(i)];
      p *= (s >> i) & 1u ? p1 : 1.0 - p1;
    }
    probs[s] = p;
  }
  return DistributionTable(n, std::move(probs), temperature,
                           DistributionSource::kUnivariateProduct);
}

}  // namespace mnm
