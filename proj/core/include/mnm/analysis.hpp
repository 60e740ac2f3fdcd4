#pragma once

#include <cstdint>
#include <vector>

#include "mnm/distribution.hpp"
#include "mnm/mop.hpp"
#include "mnm/pareto.hpp"

namespace mnm {

/// Pairwise mutual information in nats. Symmetric, zero diagonal,
/// off-diagonal entries non-negative.
struct MutualInfoMatrix {
  int n_vars = 0;
  std::vector<double> values;  // row-major N x N

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i - 1) *
                      static_cast<std::size_t>(n_vars) +
                  static_cast<std::size_t>(j - 1)];
  }
};

/// MI(X_i; X_j) in nats from the 2x2 joint and its own row/column sums,
/// with the 0 ln 0 = 0 convention. Values in [-1e-12, 0) clamp to zero;
/// anything lower reports an inconsistent distribution.
double mutual_information(const DistributionTable& dist, int i, int j);

MutualInfoMatrix mi_matrix(const DistributionTable& dist);

double max_offdiagonal(const MutualInfoMatrix& matrix);
double mean_offdiagonal(const MutualInfoMatrix& matrix);

/// Distinct objective-vector count of a table: how many different rows
/// remain when solutions colliding in objective space are merged. Shrinks
/// as sigma clumps fitness values.
std::size_t count_distinct_rows(const ValueMatrix& table);

/// Everything the per-problem simulation produces: the (normalized)
/// objective table, one Boltzmann table / marginal set / univariate product
/// table per objective, the true front, the factorized-approximation front
/// and their comparison.
struct SimulationRecord {
  ObjectiveTable table;
  std::vector<DistributionTable> boltzmann_tables;
  std::vector<UnivariateMarginals> marginals;
  std::vector<DistributionTable> product_tables;
  FrontResult objective_front;
  FrontResult factorized_front;
  FrontComparison front_comparison;
};

/// The full pipeline on one problem: evaluate the 2^N solutions, compute
/// each objective's Boltzmann distribution, extract univariate marginals,
/// build the product approximations, and take the fronts of both the
/// objective table and the product tables. Deterministic for any worker
/// count.
SimulationRecord run_simulation(const MnmProblem& problem,
                                double temperature = 1.0,
                                bool normalize = true, unsigned workers = 1);

/// Parameter grid for the dependency sweep. Defaults reproduce the
/// standard experiment: N = 10, M in 1..9, sigma = 1,3,...,19, ten models
/// per cell, temperature 1.
struct SweepConfig {
  int n_vars = 10;
  std::vector<int> m_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> sigma_grid = {1, 3, 5, 7, 9, 11, 13, 15, 17, 19};
  int models_per_cell = 10;
  std::uint64_t base_seed = 1;
  double temperature = 1.0;
  int analyzed_objective = 2;  // 1-based; objective 2 carries the order-M terms
  unsigned workers = 1;
};

/// One generated model of one grid cell.
struct SweepModelRecord {
  int max_order = 0;
  double sigma = 0.0;
  int model_index = 0;
  std::uint64_t seed = 0;
  double mi_max = 0.0;
  double mi_mean = 0.0;
  std::size_t front_size = 0;
  double front_jaccard = 0.0;  // true front vs factorized front
  std::size_t distinct_value_count = 0;
};

/// Mean and sample standard deviation per cell, models in index order.
struct SweepCellStats {
  int max_order = 0;
  double sigma = 0.0;
  double mi_max_mean = 0.0, mi_max_std = 0.0;
  double mi_mean_mean = 0.0, mi_mean_std = 0.0;
  double front_size_mean = 0.0, front_size_std = 0.0;
  double front_jaccard_mean = 0.0, front_jaccard_std = 0.0;
  double distinct_value_count_mean = 0.0, distinct_value_count_std = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepModelRecord> models;  // ordered by (M, sigma, model)
  std::vector<SweepCellStats> cells;     // ordered by (M, sigma)
};

/// Runs the grid. Model k of cell (M, sigma_index) draws its landscape
/// from derive_seed(base_seed, 0, sigma_index, k); the order slot is pinned
/// to 0 so every M shares one master stream per (sigma, model) and the
/// cell's landscape is the order-M truncation of that master. Cells execute
/// in parallel with results identical to serial execution.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace mnm
