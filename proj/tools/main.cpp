// mnm: generate multi-objective NM landscapes, enumerate and analyze them.
//
// Subcommands: generate, simulate, sweep, front, mi. Every command is a
// pure function from (flags, seeds) to output bytes; rerunning with the
// same arguments rewrites identical files at any --workers count.
// Exit codes: 0 success, 2 validation error, 3 resource guard, 4 I/O.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mnm/analysis.hpp"
#include "mnm/errors.hpp"
#include "mnm/io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

void print_error_line(int code, const std::string& type,
                      const std::string& message) {
  nlohmann::json doc;
  doc["error"]["exit_code"] = code;
  doc["error"]["type"] = type;
  doc["error"]["message"] = message;
  std::cerr << doc.dump() << "\n";
}

// Config files mirror the flags. TOML is handled by CLI11's own reader;
// a leading '{' switches to JSON, where nested objects name subcommands:
//   {"sweep": {"n": 10, "models": 5}}
class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string content((std::istreambuf_iterator<char>(input)),
                        std::istreambuf_iterator<char>());
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(content);
      } catch (const nlohmann::json::exception& e) {
        throw mnm::ParameterError(std::string("config file: ") + e.what());
      }
      std::vector<CLI::ConfigItem> items;
      collect(doc, {}, items);
      return items;
    }
    std::istringstream rest(content);
    return CLI::ConfigTOML::from_config(rest);
  }

 private:
  static void collect(const nlohmann::json& node,
                      std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      const nlohmann::json& value = it.value();
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(it.key());
        collect(value, std::move(nested), items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (value.is_array()) {
        for (const auto& element : value) {
          item.inputs.push_back(scalar(element));
        }
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
  }
};

struct GenerateArgs {
  int n = 10;
  int m = 2;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::string out = "landscape.json";
};

struct SimulateArgs {
  int n = 10;
  int m1 = 2;
  int m2 = 2;
  bool m1_given = false;
  bool m2_given = false;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  double temperature = 1.0;
  bool raw = false;
  std::string landscape_file;
  int figure = 0;
  int row = 0;
  std::string panel;
  std::string out_dir = "simulate_out";
  std::string format = "csv";
  unsigned workers = 1;
};

struct SweepArgs {
  mnm::SweepConfig config;
  std::string out_dir = "sweep_out";
};

struct FrontArgs {
  std::string table_file;
  std::string out = "front.csv";
  std::string algorithm = "auto";
};

struct MiArgs {
  std::string dist_file;
  int n = 10;
  std::string out = "mi.csv";
};

void run_generate(const GenerateArgs& args) {
  const mnm::NmLandscape landscape =
      mnm::generate_landscape(args.n, args.m, args.sigma, args.seed);
  mnm::io::write_landscape_json(args.out, landscape);
  std::cout << "wrote " << args.out << " (" << landscape.term_count()
            << " terms)\n";
}

// The preset table: figure 1 rows sweep (sigma, order) over
// {1,19} x {1,2} with both objectives at the same order; figure 2 fixes
// sigma = 36 and gives the objectives adjacent orders.
void apply_figure_preset(SimulateArgs& args) {
  if (args.figure == 1) {
    if (args.row < 1 || args.row > 4) {
      throw mnm::ParameterError("--figure 1 requires --row in 1..4");
    }
    static constexpr double kSigma[4] = {1.0, 19.0, 1.0, 19.0};
    static constexpr int kOrder[4] = {1, 1, 2, 2};
    args.n = 10;
    args.sigma = kSigma[args.row - 1];
    args.m1 = kOrder[args.row - 1];
    args.m2 = kOrder[args.row - 1];
  } else if (args.figure == 2) {
    if (args.panel != "left" && args.panel != "right") {
      throw mnm::ParameterError("--figure 2 requires --panel left|right");
    }
    args.n = 10;
    args.sigma = 36.0;
    args.m1 = args.panel == "left" ? 1 : 2;
    args.m2 = args.m1 + 1;
  } else {
    throw mnm::ParameterError("--figure must be 1 or 2");
  }
}

void run_simulate(const SimulateArgs& args) {
  if (args.format != "csv" && args.format != "json") {
    throw mnm::ParameterError("--format must be csv or json");
  }

  mnm::MnmProblem problem = [&] {
    if (!args.landscape_file.empty()) {
      const mnm::NmLandscape parent =
          mnm::io::read_landscape_json(args.landscape_file);
      const int m1 = args.m1_given ? args.m1 : parent.max_order();
      const int m2 = args.m2_given ? args.m2 : parent.max_order();
      return mnm::make_bi_objective(parent, m1, m2);
    }
    const mnm::NmLandscape parent =
        mnm::generate_landscape(args.n, args.m2, args.sigma, args.seed);
    return mnm::make_bi_objective(parent, args.m1, args.m2);
  }();

  const mnm::SimulationRecord sim = mnm::run_simulation(
      problem, args.temperature, /*normalize=*/!args.raw, args.workers);

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  if (args.format == "json") {
    mnm::io::write_objective_table_json(dir / "objective_table.json",
                                        sim.table, problem);
  } else {
    mnm::io::write_objective_table_csv(dir / "objective_table.csv", sim.table);
  }
  for (int j = 0; j < problem.num_objectives(); ++j) {
    const std::string tag = "f" + std::to_string(j + 1);
    const auto uj = static_cast<std::size_t>(j);
    mnm::io::write_distribution_csv(dir / ("boltzmann_" + tag + ".csv"),
                                    sim.boltzmann_tables[uj]);
    mnm::io::write_marginals_csv(dir / ("marginals_" + tag + ".csv"),
                                 sim.marginals[uj]);
    mnm::io::write_distribution_csv(dir / ("product_" + tag + ".csv"),
                                    sim.product_tables[uj]);
  }
  mnm::io::write_front_csv(dir / "front_true.csv", sim.objective_front);
  mnm::io::write_front_csv(dir / "front_factorized.csv",
                           sim.factorized_front);
  mnm::io::write_front_comparison_json(dir / "front_comparison.json",
                                       sim.front_comparison,
                                       sim.objective_front.size(),
                                       sim.factorized_front.size());

  std::cout << "front_size=" << sim.objective_front.size()
            << " factorized_front_size=" << sim.factorized_front.size()
            << " jaccard=" << mnm::io::format_sig12(sim.front_comparison.jaccard)
            << " set_equal=" << (sim.front_comparison.set_equal ? "true" : "false")
            << "\n";
}

void run_sweep_cmd(const SweepArgs& args) {
  const mnm::SweepResult result = mnm::run_sweep(args.config);
  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  mnm::io::write_sweep_models_csv(dir / "sweep_models.csv", result);
  mnm::io::write_sweep_aggregate_csv(dir / "sweep_aggregate.csv", result);
  mnm::io::write_sweep_plot_json(dir / "sweep_plot.json", result);
  std::cout << "cells=" << result.cells.size()
            << " models=" << result.models.size() << "\n";
}

void run_front(const FrontArgs& args) {
  mnm::FrontAlgorithm algorithm = mnm::FrontAlgorithm::kAuto;
  if (args.algorithm == "pairwise") {
    algorithm = mnm::FrontAlgorithm::kPairwise;
  } else if (args.algorithm == "sweep") {
    algorithm = mnm::FrontAlgorithm::kSortSweep;
  } else if (args.algorithm != "auto") {
    throw mnm::ParameterError("--algorithm must be auto, pairwise or sweep");
  }
  const mnm::ValueMatrix table = mnm::io::read_table_csv(args.table_file);
  const mnm::FrontResult front = mnm::pareto_front(table, algorithm);
  mnm::io::write_front_csv(args.out, front);
  std::cout << "front_size=" << front.size() << " of " << table.rows()
            << " rows\n";
}

void run_mi(const MiArgs& args) {
  const mnm::DistributionTable dist =
      mnm::io::read_distribution_csv(args.dist_file, args.n);
  const mnm::MutualInfoMatrix matrix = mnm::mi_matrix(dist);
  mnm::io::write_mi_pairs_csv(args.out, matrix);
  std::cout << "mi_max=" << mnm::io::format_sig12(mnm::max_offdiagonal(matrix))
            << " mi_mean="
            << mnm::io::format_sig12(mnm::mean_offdiagonal(matrix)) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-objective NM-landscape generator and analyzer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or JSON config file mirroring the flags"
                                 " (flags take precedence)");
  app.config_formatter(std::make_shared<JsonOrTomlConfig>());

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate one landscape and write it as JSON");
  generate->add_option("--n", gen.n, "Number of variables")->capture_default_str();
  generate->add_option("--m", gen.m, "Maximum interaction order")
      ->capture_default_str();
  generate->add_option("--sigma", gen.sigma, "Coefficient clumping parameter")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Stream seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output file")->capture_default_str();

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Enumerate a bi-objective problem, compute Boltzmann and "
                  "product distributions, and export both fronts");
  simulate->add_option("--n", sim.n, "Number of variables")->capture_default_str();
  simulate->add_option("--m1", sim.m1, "Maximum order of objective 1")
      ->capture_default_str();
  simulate->add_option("--m2", sim.m2, "Maximum order of objective 2")
      ->capture_default_str();
  simulate->add_option("--sigma", sim.sigma, "Coefficient clumping parameter")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Stream seed")->capture_default_str();
  simulate->add_option("--temperature", sim.temperature,
                       "Boltzmann temperature")->capture_default_str();
  simulate->add_flag("--raw", sim.raw,
                     "Feed raw objective values to the Boltzmann step "
                     "instead of normalized ones");
  simulate->add_option("--landscape", sim.landscape_file,
                       "Parent landscape JSON (instead of generating)");
  CLI::Option* fig_opt =
      simulate->add_option("--figure", sim.figure, "Figure preset (1 or 2)");
  simulate->add_option("--row", sim.row, "Row of the figure-1 preset (1..4)")
      ->needs(fig_opt);
  simulate->add_option("--panel", sim.panel,
                       "Panel of the figure-2 preset (left|right)")
      ->needs(fig_opt);
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")
      ->capture_default_str();
  simulate->add_option("--format", sim.format,
                       "Objective table format: csv or json")
      ->capture_default_str();
  simulate->add_option("--workers", sim.workers,
                       "Worker threads (0 = hardware)")->capture_default_str();

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run the (M, sigma) dependency sweep and export its records");
  sweep_cmd->add_option("--n", sweep.config.n_vars, "Number of variables")
      ->capture_default_str();
  sweep_cmd->add_option("--m-grid", sweep.config.m_grid,
                        "Maximum orders to sweep")->expected(-1);
  sweep_cmd->add_option("--sigma-grid", sweep.config.sigma_grid,
                        "Sigma values to sweep")->expected(-1);
  sweep_cmd->add_option("--models", sweep.config.models_per_cell,
                        "Models per grid cell")->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.config.base_seed, "Base seed")
      ->capture_default_str();
  sweep_cmd->add_option("--temperature", sweep.config.temperature,
                        "Boltzmann temperature")->capture_default_str();
  sweep_cmd->add_option("--objective", sweep.config.analyzed_objective,
                        "Objective analyzed for dependencies (1 or 2)")
      ->capture_default_str();
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "Output directory")
      ->capture_default_str();
  sweep_cmd->add_option("--workers", sweep.config.workers,
                        "Worker threads (0 = hardware)")->capture_default_str();

  FrontArgs front;
  CLI::App* front_cmd = app.add_subcommand(
      "front", "Extract the Pareto front of an objective or probability table");
  front_cmd->add_option("--table", front.table_file, "Input table CSV")
      ->required();
  front_cmd->add_option("--out", front.out, "Output front CSV")
      ->capture_default_str();
  front_cmd->add_option("--algorithm", front.algorithm,
                        "auto, pairwise or sweep")->capture_default_str();

  MiArgs mi;
  CLI::App* mi_cmd = app.add_subcommand(
      "mi", "Pairwise mutual information of a distribution table");
  mi_cmd->add_option("--dist", mi.dist_file, "Input distribution CSV")
      ->required();
  mi_cmd->add_option("--n", mi.n, "Number of variables")->capture_default_str();
  mi_cmd->add_option("--out", mi.out, "Output CSV")->capture_default_str();

  try {
    app.parse(argc, argv);

    if (*generate) {
      run_generate(gen);
    } else if (*simulate) {
      sim.m1_given = simulate->count("--m1") > 0;
      sim.m2_given = simulate->count("--m2") > 0;
      if (simulate->count("--figure") > 0) {
        for (const char* flag : {"--n", "--sigma", "--m1", "--m2",
                                 "--landscape"}) {
          if (simulate->count(flag) > 0) {
            throw mnm::ParameterError(std::string(flag) +
                                      " conflicts with --figure presets");
          }
        }
        apply_figure_preset(sim);
      }
      run_simulate(sim);
    } else if (*sweep_cmd) {
      run_sweep_cmd(sweep);
    } else if (*front_cmd) {
      run_front(front);
    } else if (*mi_cmd) {
      run_mi(mi);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    print_error_line(kExitValidation, "validation", e.what());
    return kExitValidation;
  } catch (const mnm::ResourceError& e) {
    print_error_line(kExitResource, "resource", e.what());
    return kExitResource;
  } catch (const mnm::IoError& e) {
    print_error_line(kExitIo, "io", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    print_error_line(kExitIo, "io", e.what());
    return kExitIo;
  } catch (const mnm::NormalizationError& e) {
    print_error_line(kExitValidation, "validation", e.what());
    return kExitValidation;
  } catch (const mnm::ParameterError& e) {
    print_error_line(kExitValidation, "validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error_line(kExitValidation, "validation", e.what());
    return kExitValidation;
  }
}
