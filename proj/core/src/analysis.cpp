#include "mnm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mnm/errors.hpp"
#include "mnm/parallel.hpp"
#include "mnm/rng.hpp"

namespace mnm {
namespace {

constexpr double kNegativeMiTolerance = -1e-12;

double mi_from_bivariate(const BivariateMarginal& biv) {
  const double pi1 = biv.at(1, 1) + biv.at(1, 0);
  const double pi0 = biv.at(0, 1) + biv.at(0, 0);
  const double pj1 = biv.at(1, 1) + biv.at(0, 1);
  const double pj0 = biv.at(1, 0) + biv.at(0, 0);
  const double pa[2] = {pi0, pi1};
  const double pb[2] = {pj0, pj1};

  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double joint = biv.at(a, b);
      if (joint == 0.0) continue;  // 0 ln 0 = 0
      const double indep = pa[a] * pb[b];
      if (indep <= 0.0) {
        throw ParameterError(
            "mutual_information: inconsistent distribution (joint mass with "
            "zero marginal)");
      }
      mi += joint * std::log(joint / indep);
    }
  }
  if (mi < 0.0) {
    if (mi < kNegativeMiTolerance) {
      throw ParameterError("mutual_information: value " + std::to_string(mi) +
                           " below the -1e-12 tolerance, distribution is "
                           "inconsistent");
    }
    mi = 0.0;
  }
  return mi;
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

double mutual_information(const DistributionTable& dist, int i, int j) {
  if (i == j) {
    throw ParameterError("mutual_information: need two distinct variables");
  }
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  return mi_from_bivariate(bivariate_marginal(dist, lo, hi));
}

MutualInfoMatrix mi_matrix(const DistributionTable& dist) {
  const int n = dist.n_vars();
  MutualInfoMatrix out;
  out.n_vars = n;
  out.values.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                    0.0);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double mi = mutual_information(dist, i, j);
      out.values[static_cast<std::size_t>(i - 1) * n + (j - 1)] = mi;
      out.values[static_cast<std::size_t>(j - 1) * n + (i - 1)] = mi;
    }
  }
  return out;
}

double max_offdiagonal(const MutualInfoMatrix& matrix) {
  double best = 0.0;
  for (int i = 1; i <= matrix.n_vars; ++i) {
    for (int j = i + 1; j <= matrix.n_vars; ++j) {
      best = std::max(best, matrix.at(i, j));
    }
  }
  return best;
}

double mean_offdiagonal(const MutualInfoMatrix& matrix) {
  const int n = matrix.n_vars;
  if (n < 2) return 0.0;
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) total += matrix.at(i, j);
  }
  return total / (static_cast<double>(n) * (n - 1) / 2.0);
}

std::size_t count_distinct_rows(const ValueMatrix& table) {
  std::vector<std::vector<double>> rows;
  rows.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto row = table.row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  std::sort(rows.begin(), rows.end());
  return static_cast<std::size_t>(
      std::unique(rows.begin(), rows.end()) - rows.begin());
}

SimulationRecord run_simulation(const MnmProblem& problem, double temperature,
                                bool normalize, unsigned workers) {
  SimulationRecord record;
  record.table = full_table(problem, normalize, workers);

  const int m = problem.num_objectives();
  record.boltzmann_tables.reserve(static_cast<std::size_t>(m));
  record.marginals.reserve(static_cast<std::size_t>(m));
  record.product_tables.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const std::vector<double> values =
        record.table.values.column(static_cast<std::size_t>(j));
    record.boltzmann_tables.push_back(boltzmann(values, temperature, workers));
    record.marginals.push_back(
        univariate_marginals(record.boltzmann_tables.back()));
    record.product_tables.push_back(
        product_distribution(record.marginals.back(), temperature));
  }

  record.objective_front = pareto_front(record.table.values);
  record.factorized_front = front_from_distributions(record.product_tables);
  record.front_comparison =
      compare_fronts(record.objective_front, record.factorized_front);
  return record;
}

namespace {

void check_sweep_config(const SweepConfig& config) {
  if (config.n_vars < 1 || config.n_vars > kMaxFullEnumerationVars) {
    throw ParameterError("sweep: n_vars out of range");
  }
  if (config.m_grid.empty() || config.sigma_grid.empty()) {
    throw ParameterError("sweep: grids must be non-empty");
  }
  for (int m : config.m_grid) {
    if (m < 1 || m > config.n_vars) {
      throw ParameterError("sweep: every max order must lie in [1, n_vars]");
    }
  }
  for (double s : config.sigma_grid) {
    if (!(s > 0.0)) throw ParameterError("sweep: every sigma must be positive");
  }
  if (config.models_per_cell < 1) {
    throw ParameterError("sweep: models_per_cell must be positive");
  }
  if (!(config.temperature > 0.0)) {
    throw ParameterError("sweep: temperature must be positive");
  }
  if (config.analyzed_objective < 1 || config.analyzed_objective > 2) {
    throw ParameterError("sweep: analyzed_objective must be 1 or 2");
  }
  if (config.sigma_grid.size() > 0xffffu) {
    throw ParameterError("sweep: sigma grid too large for seed derivation");
  }
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  check_sweep_config(config);

  SweepResult result;
  result.config = config;

  const std::size_t models_per_cell =
      static_cast<std::size_t>(config.models_per_cell);
  const std::size_t cells =
      config.m_grid.size() * config.sigma_grid.size();
  const std::size_t tasks = cells * models_per_cell;
  result.models.resize(tasks);

  parallel_for(tasks, config.workers, [&](std::size_t task) {
    const std::size_t model_index = task % models_per_cell;
    const std::size_t cell = task / models_per_cell;
    const std::size_t sigma_index = cell % config.sigma_grid.size();
    const std::size_t m_index = cell / config.sigma_grid.size();

    const int max_order = config.m_grid[m_index];
    const double sigma = config.sigma_grid[sigma_index];
    // Order slot 0: one master stream per (sigma, model); the cell's
    // landscape is the order-M truncation of that master, realized as
    // direct generation at order M from the same seed.
    const std::uint64_t seed =
        derive_seed(config.base_seed, 0, static_cast<unsigned>(sigma_index),
                    static_cast<unsigned>(model_index));

    const NmLandscape parent =
        generate_landscape(config.n_vars, max_order, sigma, seed);
    const MnmProblem problem = make_bi_objective(parent, max_order, max_order);
    const SimulationRecord sim = run_simulation(problem, config.temperature,
                                                /*normalize=*/true, 1);

    const DistributionTable& analyzed =
        sim.boltzmann_tables[static_cast<std::size_t>(
            config.analyzed_objective - 1)];
    const MutualInfoMatrix mim = mi_matrix(analyzed);

    SweepModelRecord& rec = result.models[task];
    rec.max_order = max_order;
    rec.sigma = sigma;
    rec.model_index = static_cast<int>(model_index);
    rec.seed = seed;
    rec.mi_max = max_offdiagonal(mim);
    rec.mi_mean = mean_offdiagonal(mim);
    rec.front_size = sim.objective_front.size();
    rec.front_jaccard = sim.front_comparison.jaccard;
    rec.distinct_value_count = count_distinct_rows(sim.table.values);
  }, 1);

  result.cells.reserve(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t base = cell * models_per_cell;
    std::vector<double> mi_max, mi_mean, front_size, jaccard, distinct;
    for (std::size_t k = 0; k < models_per_cell; ++k) {
      const SweepModelRecord& rec = result.models[base + k];
      mi_max.push_back(rec.mi_max);
      mi_mean.push_back(rec.mi_mean);
      front_size.push_back(static_cast<double>(rec.front_size));
      jaccard.push_back(rec.front_jaccard);
      distinct.push_back(static_cast<double>(rec.distinct_value_count));
    }
    auto mean_of = [](const std::vector<double>& xs) {
      double t = 0.0;
      for (double x : xs) t += x;
      return t / static_cast<double>(xs.size());
    };
    SweepCellStats stats;
    stats.max_order = result.models[base].max_order;
    stats.sigma = result.models[base].sigma;
    stats.mi_max_mean = mean_of(mi_max);
    stats.mi_max_std = sample_std(mi_max, stats.mi_max_mean);
    stats.mi_mean_mean = mean_of(mi_mean);
    stats.mi_mean_std = sample_std(mi_mean, stats.mi_mean_mean);
    stats.front_size_mean = mean_of(front_size);
    stats.front_size_std = sample_std(front_size, stats.front_size_mean);
    stats.front_jaccard_mean = mean_of(jaccard);
    stats.front_jaccard_std = sample_std(jaccard, stats.front_jaccard_mean);
    stats.distinct_value_count_mean = mean_of(distinct);
    stats.distinct_value_count_std =
        sample_std(distinct, stats.distinct_value_count_mean);
    result.cells.push_back(stats);
  }
  return result;
}

}  // namespace mnm
