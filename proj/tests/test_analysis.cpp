#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mnm/analysis.hpp"
#include "mnm/errors.hpp"
#include "mnm/rng.hpp"

using namespace mnm;

namespace {

// Independent oracle: MI from scratch, joint and marginals by direct
// summation over the solution space.
double oracle_mi(const std::vector<double>& probs, int i, int j) {
  double joint[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const int a = (s >> (i - 1)) & 1;
    const int b = (s >> (j - 1)) & 1;
    joint[a][b] += probs[s];
  }
  const double pa[2] = {joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]};
  const double pb[2] = {joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]};
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (joint[a][b] > 0.0) {
        mi += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
      }
    }
  }
  return mi;
}

DistributionTable boltzmann_of(const MnmProblem& problem, int column,
                               double temperature = 1.0) {
  const ObjectiveTable table = full_table(problem, true);
  return boltzmann(table.values.column(static_cast<std::size_t>(column)),
                   temperature);
}

}  // namespace

TEST_CASE("mutual information of a product distribution is zero") {
  UnivariateMarginals marg;
  marg.p_one = {0.3, 0.8, 0.5, 0.12, 0.99};
  const DistributionTable dist = product_distribution(marg);
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      CHECK(mutual_information(dist, i, j) <= 1e-12);
    }
  }
}

TEST_CASE("perfectly correlated bits carry ln 2 nats") {
  std::vector<double> probs(4, 0.0);
  probs[0b00] = 0.5;
  probs[0b11] = 0.5;
  const DistributionTable dist(2, std::move(probs), 1.0,
                               DistributionSource::kExternal);
  CHECK(mutual_information(dist, 1, 2) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mutual information rejects a variable paired with itself") {
  const std::vector<double> values(16, 0.0);
  const DistributionTable dist = boltzmann(values, 1.0);
  CHECK_THROWS_AS(mutual_information(dist, 3, 3), ParameterError);
}

TEST_CASE("mutual information is symmetric in its arguments") {
  const NmLandscape parent = generate_landscape(8, 2, 9.0, 3);
  const DistributionTable dist =
      boltzmann_of(make_bi_objective(parent, 2, 2), 1);
  CHECK(mutual_information(dist, 2, 6) == mutual_information(dist, 6, 2));
}

TEST_CASE("order-1 objectives have zero mutual information everywhere") {
  for (double sigma : {1.0, 9.0, 19.0}) {
    const NmLandscape parent = generate_landscape(10, 1, sigma, 42);
    const DistributionTable dist =
        boltzmann_of(make_bi_objective(parent, 1, 1), 1);
    const MutualInfoMatrix matrix = mi_matrix(dist);
    CHECK(max_offdiagonal(matrix) <= 1e-10);
  }
}

TEST_CASE("mi_matrix: uniform distribution gives the zero matrix") {
  const std::vector<double> values(256, 0.5);
  const MutualInfoMatrix matrix = mi_matrix(boltzmann(values, 1.0));
  CHECK(matrix.n_vars == 8);
  for (int i = 1; i <= 8; ++i) {
    CHECK(matrix.at(i, i) == 0.0);
    for (int j = 1; j <= 8; ++j) {
      CHECK(matrix.at(i, j) <= 1e-13);
      CHECK(matrix.at(i, j) == matrix.at(j, i));
    }
  }
}

TEST_CASE("order-2 landscapes at large sigma show positive dependence") {
  const NmLandscape parent = generate_landscape(10, 2, 19.0, 11);
  const DistributionTable dist =
      boltzmann_of(make_bi_objective(parent, 2, 2), 1);
  const MutualInfoMatrix matrix = mi_matrix(dist);
  CHECK(max_offdiagonal(matrix) > 0.0);
  CHECK(mean_offdiagonal(matrix) > 0.0);
}

TEST_CASE("mi values match the brute-force oracle") {
  const NmLandscape parent = generate_landscape(9, 3, 7.0, 123);
  const DistributionTable dist =
      boltzmann_of(make_bi_objective(parent, 3, 3), 1);
  for (auto [i, j] : {std::pair{1, 2}, {4, 9}, {2, 7}}) {
    CHECK(std::abs(mutual_information(dist, i, j) -
                   oracle_mi(dist.probs(), i, j)) <= 1e-12);
  }
}

TEST_CASE("count_distinct_rows merges exact collisions only") {
  ValueMatrix table(5, 2);
  table.at(0, 0) = 1.0; table.at(0, 1) = 2.0;
  table.at(1, 0) = 1.0; table.at(1, 1) = 2.0;
  table.at(2, 0) = 1.0; table.at(2, 1) = 2.0000000001;
  table.at(3, 0) = 0.0; table.at(3, 1) = 0.0;
  table.at(4, 0) = 0.0; table.at(4, 1) = 0.0;
  CHECK(count_distinct_rows(table) == 3);
}

TEST_CASE("run_simulation: order-1 problems have identical fronts") {
  const NmLandscape parent = generate_landscape(10, 1, 5.0, 2025);
  const MnmProblem problem = make_bi_objective(parent, 1, 1);
  const SimulationRecord sim = run_simulation(problem);
  CHECK(sim.front_comparison.set_equal);
  CHECK(sim.front_comparison.jaccard == 1.0);
}

TEST_CASE("run_simulation produces a complete, consistent record") {
  const NmLandscape parent = generate_landscape(8, 2, 1.0, 6);
  const MnmProblem problem = make_bi_objective(parent, 1, 2);
  const SimulationRecord sim = run_simulation(problem, 1.0, true, 3);

  REQUIRE(sim.boltzmann_tables.size() == 2);
  REQUIRE(sim.marginals.size() == 2);
  REQUIRE(sim.product_tables.size() == 2);
  CHECK(sim.table.normalized);
  CHECK(sim.table.values.rows() == 256);

  // The Boltzmann front must coincide with the objective front.
  const FrontResult bolt_front = front_from_distributions(sim.boltzmann_tables);
  CHECK(bolt_front.member_indices == sim.objective_front.member_indices);

  // Objective 1 has only singleton terms, so its product table is exact.
  double worst = 0.0;
  for (std::size_t s = 0; s < 256; ++s) {
    worst = std::max(worst, std::abs(sim.boltzmann_tables[0].probs()[s] -
                                     sim.product_tables[0].probs()[s]));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("run_simulation is deterministic across worker counts") {
  const NmLandscape parent = generate_landscape(9, 2, 19.0, 14);
  const MnmProblem problem = make_bi_objective(parent, 2, 2);
  const SimulationRecord a = run_simulation(problem, 1.0, true, 1);
  const SimulationRecord b = run_simulation(problem, 1.0, true, 8);
  CHECK(a.table.values.data() == b.table.values.data());
  CHECK(a.boltzmann_tables[0].probs() == b.boltzmann_tables[0].probs());
  CHECK(a.product_tables[1].probs() == b.product_tables[1].probs());
  CHECK(a.objective_front.member_indices == b.objective_front.member_indices);
  CHECK(a.factorized_front.member_indices == b.factorized_front.member_indices);
}

TEST_CASE("run_sweep: layout, determinism and the zero-MI row") {
  SweepConfig config;
  config.n_vars = 6;
  config.m_grid = {1, 2};
  config.sigma_grid = {1.0, 19.0};
  config.models_per_cell = 3;
  config.base_seed = 7;
  config.workers = 1;

  const SweepResult serial = run_sweep(config);
  REQUIRE(serial.models.size() == 2 * 2 * 3);
  REQUIRE(serial.cells.size() == 4);

  SUBCASE("records are ordered by (M, sigma, model)") {
    CHECK(serial.models[0].max_order == 1);
    CHECK(serial.models[0].sigma == 1.0);
    CHECK(serial.models[0].model_index == 0);
    CHECK(serial.models[5].max_order == 1);
    CHECK(serial.models[5].sigma == 19.0);
    CHECK(serial.models[5].model_index == 2);
    CHECK(serial.models[6].max_order == 2);
  }

  SUBCASE("bit-identical results for any worker count") {
    SweepConfig threaded_config = config;
    threaded_config.workers = 5;
    const SweepResult threaded = run_sweep(threaded_config);
    REQUIRE(threaded.models.size() == serial.models.size());
    for (std::size_t k = 0; k < serial.models.size(); ++k) {
      CHECK(serial.models[k].mi_max == threaded.models[k].mi_max);
      CHECK(serial.models[k].mi_mean == threaded.models[k].mi_mean);
      CHECK(serial.models[k].seed == threaded.models[k].seed);
      CHECK(serial.models[k].front_jaccard == threaded.models[k].front_jaccard);
    }
  }

  SUBCASE("the M=1 row has zero mutual information") {
    for (const SweepModelRecord& rec : serial.models) {
      if (rec.max_order == 1) {
        CHECK(rec.mi_max <= 1e-10);
        CHECK(rec.front_jaccard == 1.0);
      }
    }
  }

  SUBCASE("seeds do not depend on M, so cells share master models") {
    // Record (M=1, sigma idx 0, model k) and (M=2, sigma idx 0, model k)
    // must draw from the same stream.
    CHECK(serial.models[0].seed == serial.models[6].seed);
    CHECK(serial.models[0].seed == derive_seed(7, 0, 0, 0));
  }

  SUBCASE("a rerun over the same grid reproduces every cell") {
    const SweepResult again = run_sweep(config);
    REQUIRE(again.models.size() == serial.models.size());
    for (std::size_t k = 0; k < serial.models.size(); ++k) {
      CHECK(again.models[k].seed == serial.models[k].seed);
      CHECK(again.models[k].mi_max == serial.models[k].mi_max);
      CHECK(again.models[k].distinct_value_count ==
            serial.models[k].distinct_value_count);
    }
  }

  SUBCASE("any model regenerates in isolation from its recorded seed") {
    // Full sweep: M=2 block starts at 6, sigma 19 sub-block at 9.
    const SweepModelRecord& rec = serial.models[10];
    const NmLandscape parent =
        generate_landscape(config.n_vars, rec.max_order, rec.sigma, rec.seed);
    const MnmProblem problem =
        make_bi_objective(parent, rec.max_order, rec.max_order);
    const SimulationRecord sim = run_simulation(problem, 1.0, true, 1);
    const MutualInfoMatrix mim = mi_matrix(sim.boltzmann_tables[1]);
    CHECK(max_offdiagonal(mim) == rec.mi_max);
    CHECK(sim.objective_front.size() == rec.front_size);
    CHECK(count_distinct_rows(sim.table.values) == rec.distinct_value_count);
  }

  SUBCASE("cell statistics aggregate their model records") {
    const SweepCellStats& cell = serial.cells[3];  // M=2, sigma=19
    CHECK(cell.max_order == 2);
    CHECK(cell.sigma == 19.0);
    double mean = 0.0;
    for (std::size_t k = 9; k < 12; ++k) mean += serial.models[k].mi_max;
    mean /= 3.0;
    CHECK(cell.mi_max_mean == doctest::Approx(mean).epsilon(1e-15));
  }
}

TEST_CASE("run_sweep validates its configuration") {
  SweepConfig config;
  config.n_vars = 4;
  config.m_grid = {5};
  CHECK_THROWS_AS(run_sweep(config), ParameterError);
  config.m_grid = {1};
  config.sigma_grid = {};
  CHECK_THROWS_AS(run_sweep(config), ParameterError);
  config.sigma_grid = {-1.0};
  CHECK_THROWS_AS(run_sweep(config), ParameterError);
  config.sigma_grid = {1.0};
  config.models_per_cell = 0;
  CHECK_THROWS_AS(run_sweep(config), ParameterError);
  config.models_per_cell = 1;
  config.analyzed_objective = 3;
  CHECK_THROWS_AS(run_sweep(config), ParameterError);
}
