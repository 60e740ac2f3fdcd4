// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus the measured
// numbers. Batches are drawn from a fixed seed so the whole suite is
// deterministic; every tolerance is pinned in code next to its check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mnm/analysis.hpp"
#include "mnm/io.hpp"
#include "mnm/rng.hpp"

using namespace mnm;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBatchSeed = 2025;

int g_failures = 0;

void report(int number, const char* name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", number,
              name, detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng.uniform01() * (hi - lo + 1));
}

double pick(Rng& rng, const std::vector<double>& xs) {
  return xs[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(xs.size()) - 1))];
}

// ---------------------------------------------------------------------------
// criterion 1: exhaustive global maximum at the all-ones spin vector
void criterion_global_maximum() {
  Rng rng(mix64(kBatchSeed ^ 1));
  int checked = 0, holds = 0;
  for (int c = 0; c < 100; ++c) {
    const int n = rand_int(rng, 4, 12);
    const int m = rand_int(rng, 1, n);
    const double sigma = pick(rng, {1.0, 19.0, 36.0});
    const NmLandscape landscape =
        generate_landscape(n, m, sigma, rng.next_u64());
    const double best = evaluate(landscape, SpinVector::all_ones(n));
    bool ok = true;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n) && ok; ++s) {
      const BitVector x = BitVector::from_index(s, n);
      if (evaluate(landscape, to_spins(x, Transform::kIdentitySign)) > best) {
        ok = false;
      }
    }
    ++checked;
    if (ok) ++holds;
  }
  report(1, "global maximum at all-ones (exhaustive)", holds == checked,
         std::to_string(holds) + "/" + std::to_string(checked) +
             " landscapes");
}

// ---------------------------------------------------------------------------
// criterion 2: both anchor solutions belong to the Pareto set
void criterion_pareto_anchors() {
  Rng rng(mix64(kBatchSeed ^ 2));
  int checked = 0, holds = 0;
  for (int c = 0; c < 100; ++c) {
    const int n = rand_int(rng, 4, 12);
    const int m2 = rand_int(rng, 1, n);
    const int m1 = rand_int(rng, 1, m2);
    const double sigma = pick(rng, {1.0, 19.0, 36.0});
    const NmLandscape parent =
        generate_landscape(n, m2, sigma, rng.next_u64());
    const MnmProblem problem = make_bi_objective(parent, m1, m2);
    const FrontResult front = pareto_front(full_table(problem, true).values);
    const bool ok =
        std::binary_search(front.member_indices.begin(),
                           front.member_indices.end(), std::uint64_t{0}) &&
        std::binary_search(front.member_indices.begin(),
                           front.member_indices.end(),
                           (std::uint64_t{1} << n) - 1);
    ++checked;
    if (ok) ++holds;
  }
  report(2, "Pareto set contains indices 0 and 2^N-1", holds == checked,
         std::to_string(holds) + "/" + std::to_string(checked) + " problems");
}

// ---------------------------------------------------------------------------
// criterion 3: Boltzmann probabilities leave the front member set unchanged
void criterion_boltzmann_front() {
  Rng rng(mix64(kBatchSeed ^ 3));
  int checked = 0, holds = 0;
  for (int c = 0; c < 100; ++c) {
    const int n = 10;
    const int m2 = rand_int(rng, 1, 9);
    const int m1 = rand_int(rng, 1, m2);
    const double sigma = 1.0 + 2.0 * rand_int(rng, 0, 9);
    const NmLandscape parent =
        generate_landscape(n, m2, sigma, rng.next_u64());
    const MnmProblem problem = make_bi_objective(parent, m1, m2);
    const ObjectiveTable table = full_table(problem, true);
    std::vector<DistributionTable> dists;
    for (int j = 0; j < 2; ++j) {
      dists.push_back(
          boltzmann(table.values.column(static_cast<std::size_t>(j)), 1.0));
    }
    const bool ok = pareto_front(table.values).member_indices ==
                    front_from_distributions(dists).member_indices;
    ++checked;
    if (ok) ++holds;
  }
  report(3, "Boltzmann front equals objective front (exact set equality)",
         holds == checked,
         std::to_string(holds) + "/" + std::to_string(checked) + " problems");
}

// ---------------------------------------------------------------------------
// criterion 4: order-1 problems factorize exactly and keep the front
void criterion_m1_factorization() {
  Rng rng(mix64(kBatchSeed ^ 4));
  int checked = 0, holds = 0;
  double worst_linf = 0.0;
  for (int si = 0; si < 10; ++si) {
    const double sigma = 1.0 + 2.0 * si;
    for (int rep = 0; rep < 5; ++rep) {
      const NmLandscape parent =
          generate_landscape(10, 1, sigma, rng.next_u64());
      const MnmProblem problem = make_bi_objective(parent, 1, 1);
      const SimulationRecord sim = run_simulation(problem, 1.0, true, 1);
      double linf = 0.0;
      for (int j = 0; j < 2; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        for (std::size_t s = 0; s < sim.boltzmann_tables[uj].size(); ++s) {
          linf = std::max(linf,
                          std::abs(sim.boltzmann_tables[uj].probs()[s] -
                                   sim.product_tables[uj].probs()[s]));
        }
      }
      worst_linf = std::max(worst_linf, linf);
      const bool ok = linf <= 1e-10 && sim.front_comparison.set_equal;
      ++checked;
      if (ok) ++holds;
    }
  }
  std::ostringstream detail;
  detail << holds << "/" << checked << " problems, worst Linf "
         << io::format_sig12(worst_linf) << " (<= 1e-10)";
  report(4, "M=1 factorization exact, fronts identical", holds == checked,
         detail.str());
}

// ---------------------------------------------------------------------------
// criteria 5-8 share the default sweep
double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto rank = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = rank(x), ry = rank(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    num += (rx[i] - mx) * (ry[i] - my);
    dx += (rx[i] - mx) * (rx[i] - mx);
    dy += (ry[i] - my) * (ry[i] - my);
  }
  return num / std::sqrt(dx * dy);
}

void criteria_sweep_based() {
  SweepConfig config;
  config.base_seed = kBatchSeed;
  config.workers = 4;
  const SweepResult sweep = run_sweep(config);
  const std::size_t n_sigma = config.sigma_grid.size();

  // criterion 5: zero MI everywhere on the M=1 row
  {
    double worst = 0.0;
    for (const SweepModelRecord& rec : sweep.models) {
      if (rec.max_order == 1) worst = std::max(worst, rec.mi_max);
    }
    report(5, "M=1 row: max off-diagonal MI <= 1e-10 for every model",
           worst <= 1e-10, "worst " + io::format_sig12(worst));
  }

  auto cell_mi_max = [&](int m, std::size_t sigma_index) {
    const std::size_t row =
        static_cast<std::size_t>(m - 1) * n_sigma + sigma_index;
    return sweep.cells[row].mi_max_mean;
  };

  // criterion 6: the mean mi_max is maximized at M = 2 for sigma >= 5
  {
    int considered = 0, misses = 0;
    std::string miss_list;
    for (std::size_t si = 0; si < n_sigma; ++si) {
      if (config.sigma_grid[si] < 5.0) continue;
      ++considered;
      int argmax = 1;
      for (int m = 2; m <= 9; ++m) {
        if (cell_mi_max(m, si) > cell_mi_max(argmax, si)) argmax = m;
      }
      if (argmax != 2) {
        ++misses;
        miss_list += " sigma=" + io::format_sig12(config.sigma_grid[si]);
      }
    }
    report(6, "argmax_M of mean mi_max equals 2 for sigma >= 5 (<= 1 miss)",
           misses <= 1,
           std::to_string(considered - misses) + "/" +
               std::to_string(considered) + " grid points" + miss_list);
  }

  // criterion 7: MI increases with sigma at M = 2
  {
    std::vector<double> mi(n_sigma);
    for (std::size_t si = 0; si < n_sigma; ++si) mi[si] = cell_mi_max(2, si);
    const double rho = spearman(config.sigma_grid, mi);
    report(7, "Spearman(sigma, mean mi_max | M=2) >= 0.9", rho >= 0.9,
           "rho " + io::format_sig12(rho));
  }

  // criterion 8: clumping, fewer distinct objective pairs at sigma 19
  {
    auto distinct_mean = [&](int m, double sigma) {
      for (const SweepCellStats& cell : sweep.cells) {
        if (cell.max_order == m && cell.sigma == sigma) {
          return cell.distinct_value_count_mean;
        }
      }
      return -1.0;
    };
    std::ostringstream detail;
    bool ok = true;
    for (int m : {1, 2}) {
      const double at1 = distinct_mean(m, 1.0);
      const double at19 = distinct_mean(m, 19.0);
      if (!(at19 < at1)) ok = false;
      detail << "M=" << m << ": " << io::format_sig12(at1) << " -> "
             << io::format_sig12(at19) << (m == 1 ? ", " : "");
    }
    report(8, "mean distinct normalized pairs: sigma 19 strictly below sigma 1",
           ok, detail.str());
  }
}

// ---------------------------------------------------------------------------
// criterion 9: library results match test-local brute-force oracles
void criterion_oracles() {
  Rng rng(mix64(kBatchSeed ^ 9));
  bool ok = true;
  std::string first_failure;

  // Pareto front vs O(S^2) dominance filter.
  for (int rep = 0; rep < 200 && ok; ++rep) {
    const std::size_t rows =
        2 + static_cast<std::size_t>(rng.uniform01() * 1022);
    const std::size_t cols = rep % 2 == 0 ? 2 : 3;
    ValueMatrix table(rows, cols);
    const bool duplicates = rep % 3 == 0;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double u = rng.uniform01();
        table.at(r, c) = duplicates ? std::floor(u * 16.0) / 16.0 : u;
      }
    }
    std::vector<std::uint64_t> oracle;
    for (std::size_t s = 0; s < rows; ++s) {
      bool dominated = false;
      for (std::size_t t = 0; t < rows && !dominated; ++t) {
        if (t == s) continue;
        bool ge = true, gt = false;
        for (std::size_t c = 0; c < cols; ++c) {
          if (table.at(t, c) < table.at(s, c)) ge = false;
          if (table.at(t, c) > table.at(s, c)) gt = true;
        }
        dominated = ge && gt;
      }
      if (!dominated) oracle.push_back(s);
    }
    if (pareto_front(table).member_indices != oracle) {
      ok = false;
      first_failure = "pareto table rep " + std::to_string(rep);
    }
  }

  // Marginals and MI vs direct summation.
  for (int rep = 0; rep < 50 && ok; ++rep) {
    const int n = rand_int(rng, 4, 10);
    std::vector<double> probs(std::size_t{1} << n);
    for (double& p : probs) p = rng.uniform01() + 1e-6;
    const double total = pairwise_sum(probs);
    for (double& p : probs) p /= total;
    const DistributionTable dist(n, std::move(probs), 1.0,
                                 DistributionSource::kExternal);

    const UnivariateMarginals marg = univariate_marginals(dist);
    for (int i = 1; i <= n && ok; ++i) {
      double direct = 0.0;
      for (std::size_t s = 0; s < dist.size(); ++s) {
        if (s & (std::uint64_t{1} << (i - 1))) direct += dist.probs()[s];
      }
      if (std::abs(direct - marg.p_one[i - 1]) > 1e-12) {
        ok = false;
        first_failure = "marginal rep " + std::to_string(rep);
      }
    }
    const int i = rand_int(rng, 1, n - 1);
    const int j = rand_int(rng, i + 1, n);
    double joint[2][2] = {{0, 0}, {0, 0}};
    for (std::size_t s = 0; s < dist.size(); ++s) {
      joint[(s >> (i - 1)) & 1][(s >> (j - 1)) & 1] += dist.probs()[s];
    }
    const double pa[2] = {joint[0][0] + joint[0][1],
                          joint[1][0] + joint[1][1]};
    const double pb[2] = {joint[0][0] + joint[1][0],
                          joint[0][1] + joint[1][1]};
    double oracle_mi = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (joint[a][b] > 0.0) {
          oracle_mi += joint[a][b] * std::log(joint[a][b] / (pa[a] * pb[b]));
        }
      }
    }
    if (std::abs(mutual_information(dist, i, j) - oracle_mi) > 1e-12) {
      ok = false;
      first_failure = "mi rep " + std::to_string(rep);
    }
  }

  report(9, "front/marginal/MI oracles agree within 1e-12", ok,
         ok ? "200 tables + 50 distributions" : first_failure);
}

// ---------------------------------------------------------------------------
// criterion 10: the CLI is byte-reproducible at any worker count
#ifndef MNM_CLI_PATH
#define MNM_CLI_PATH "mnm"
#endif

bool run_cli(const std::string& args) {
  const std::string cmd =
      std::string(MNM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

void criterion_determinism() {
  const fs::path dir = "acceptance_tmp";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
  bool ok = true;
  std::string detail = "generate/simulate/sweep reruns byte-identical";

  const std::string gen_flags = "generate --n 10 --m 2 --sigma 19 --seed 5";
  ok = ok && run_cli(gen_flags + " --out " + (dir / "a.json").string());
  ok = ok && run_cli(gen_flags + " --out " + (dir / "b.json").string());
  ok = ok && same_bytes(dir / "a.json", dir / "b.json");
  if (!ok) detail = "generate rerun differs";

  if (ok) {
    const std::string sim_flags =
        "simulate --n 10 --m1 2 --m2 2 --sigma 19 --seed 5";
    ok = ok && run_cli(sim_flags + " --workers 1 --out-dir " +
                       (dir / "sim1").string());
    ok = ok && run_cli(sim_flags + " --workers 4 --out-dir " +
                       (dir / "sim4").string());
    for (const char* name :
         {"objective_table.csv", "boltzmann_f1.csv", "boltzmann_f2.csv",
          "marginals_f1.csv", "marginals_f2.csv", "product_f1.csv",
          "product_f2.csv", "front_true.csv", "front_factorized.csv",
          "front_comparison.json"}) {
      ok = ok && same_bytes(dir / "sim1" / name, dir / "sim4" / name);
      if (!ok) {
        detail = std::string("simulate outputs differ: ") + name;
        break;
      }
    }
  }

  if (ok) {
    const std::string sweep_flags =
        "sweep --n 8 --m-grid 1 2 3 --sigma-grid 1 9 19 --models 3 --seed 11";
    ok = ok && run_cli(sweep_flags + " --workers 1 --out-dir " +
                       (dir / "sw1").string());
    ok = ok && run_cli(sweep_flags + " --workers 4 --out-dir " +
                       (dir / "sw4").string());
    for (const char* name :
         {"sweep_models.csv", "sweep_aggregate.csv", "sweep_plot.json"}) {
      ok = ok && same_bytes(dir / "sw1" / name, dir / "sw4" / name);
      if (!ok) {
        detail = std::string("sweep outputs differ: ") + name;
        break;
      }
    }
  }

  report(10, "byte-identical CLI outputs across reruns and worker counts", ok,
         detail);
  fs::remove_all(dir, ec);
}

}  // namespace

int main() {
  std::printf("acceptance suite (batch seed %llu)\n",
              static_cast<unsigned long long>(kBatchSeed));
  criterion_global_maximum();
  criterion_pareto_anchors();
  criterion_boltzmann_front();
  criterion_m1_factorization();
  criteria_sweep_based();
  criterion_oracles();
  criterion_determinism();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
