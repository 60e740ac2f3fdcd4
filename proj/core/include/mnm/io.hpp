#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "mnm/analysis.hpp"
#include "mnm/distribution.hpp"
#include "mnm/landscape.hpp"
#include "mnm/matrix.hpp"
#include "mnm/mop.hpp"
#include "mnm/pareto.hpp"

namespace mnm::io {

/// Shortest-fitting "%.12g" / "%.17g" renderings. CSV files carry 12
/// significant digits; JSON files carry 17 (round-trip exact for doubles).
std::string format_sig12(double v);
std::string format_sig17(double v);

/// Streams into "<target>.tmp" and renames on commit, so an interrupted
/// run never leaves a partially written target file.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path target);
  ~AtomicFileWriter();

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream() { return stream_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream stream_;
  bool committed_ = false;
};

// Landscape files: JSON with fields {n_vars, max_order, sigma, seed, terms}.
void write_landscape_json(const std::filesystem::path& path,
                          const NmLandscape& landscape);
NmLandscape read_landscape_json(const std::filesystem::path& path);

// Objective tables: CSV header "solution_index,f1,...,fm", one row per
// solution in index order. The JSON variant adds problem metadata.
void write_objective_table_csv(const std::filesystem::path& path,
                               const ObjectiveTable& table);
void write_objective_table_json(const std::filesystem::path& path,
                                const ObjectiveTable& table,
                                const MnmProblem& problem);
ValueMatrix read_table_csv(const std::filesystem::path& path);

// Distributions: CSV header "solution_index,p". Reading validates the
// total within 1e-9 and renormalizes the rounding residue away.
void write_distribution_csv(const std::filesystem::path& path,
                            const DistributionTable& dist);
DistributionTable read_distribution_csv(const std::filesystem::path& path,
                                        int n_vars);

void write_marginals_csv(const std::filesystem::path& path,
                         const UnivariateMarginals& marginals);

// Fronts: CSV header "solution_index,f1,...,fm", members sorted by f1
// descending, ties by ascending solution index.
void write_front_csv(const std::filesystem::path& path,
                     const FrontResult& front);

void write_front_comparison_json(const std::filesystem::path& path,
                                 const FrontComparison& comparison,
                                 std::size_t size_a, std::size_t size_b);

// Mutual information pairs: CSV header "variable_i,variable_j,mi_nats".
void write_mi_pairs_csv(const std::filesystem::path& path,
                        const MutualInfoMatrix& matrix);

// Sweep exports: per-model CSV, aggregated CSV, and a plot-data JSON with
// the grid axes and matrices of cell means.
void write_sweep_models_csv(const std::filesystem::path& path,
                            const SweepResult& result);
void write_sweep_aggregate_csv(const std::filesystem::path& path,
                               const SweepResult& result);
void write_sweep_plot_json(const std::filesystem::path& path,
                           const SweepResult& result);

}  // namespace mnm::io
