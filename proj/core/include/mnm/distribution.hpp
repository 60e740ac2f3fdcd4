#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace mnm {

enum class DistributionSource { kBoltzmann, kUnivariateProduct, kExternal };

/// Probability for each of the 2^N solutions, in solution-index order.
/// Invariants enforced at construction: entries non-negative and finite,
/// total within 1e-12 of 1.
class DistributionTable {
 public:
  DistributionTable(int n_vars, std::vector<double> probs, double temperature,
                    DistributionSource source);

  int n_vars() const { return n_vars_; }
  const std::vector<double>& probs() const { return probs_; }
  double temperature() const { return temperature_; }
  DistributionSource source() const { return source_; }
  std::size_t size() const { return probs_.size(); }

 private:
  int n_vars_;
  std::vector<double> probs_;
  double temperature_;
  DistributionSource source_;
};

/// p(x_i = 1) for each variable, 1-based variable i at entry i-1.
struct UnivariateMarginals {
  std::vector<double> p_one;

  int n_vars() const { return static_cast<int>(p_one.size()); }
};

/// Joint 2x2 marginal of a variable pair (i < j, 1-based).
struct BivariateMarginal {
  int i = 0;
  int j = 0;
  // cell(a, b) = p(x_i = a, x_j = b)
  std::array<double, 4> cells{};

  double at(int a, int b) const {
    return cells[static_cast<std::size_t>((a << 1) | b)];
  }
  double& at(int a, int b) {
    return cells[static_cast<std::size_t>((a << 1) | b)];
  }
};

/// Gibbs/Boltzmann distribution of the given values at the given
/// temperature: probs[s] proportional to exp(values[s] / T).
///
/// Exponentials are taken after subtracting the maximum value (stable
/// softmax) and the normalizing constant is a fixed-shape pairwise-tree sum,
/// so results are bit-identical for any worker count. The map is strictly
/// increasing in the values, which is why it preserves per-objective
/// rankings and hence Pareto membership.
DistributionTable boltzmann(std::span<const double> values, double temperature,
                            unsigned workers = 1);

/// p(x_i = 1) by direct summation over the solution space (compensated
/// accumulation, fixed order).
UnivariateMarginals univariate_marginals(const DistributionTable& dist);

/// 2x2 joint marginal of variables i < j. Cells sum to 1 and marginalize
/// to the univariate values within 1e-12.
BivariateMarginal bivariate_marginal(const DistributionTable& dist, int i,
                                     int j);

/// Fully factorized distribution: probs[s] = prod_i p_one[i] or 1-p_one[i]
/// according to bit i of s. The temperature tag records the distribution
/// the marginals came from; it does not enter the computation.
DistributionTable product_distribution(const UnivariateMarginals& marginals,
                                       double temperature = 1.0);

/// Deterministic pairwise-tree sum (splits at the midpoint, runs of up to
/// 32 elements added left to right). Fixed shape, so the result does not
/// depend on threading anywhere else.
double pairwise_sum(std::span<const double> values);

}  // namespace mnm
