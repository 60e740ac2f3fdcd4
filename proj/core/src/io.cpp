#include "mnm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <system_error>

#include <nlohmann/json.hpp>

#include "mnm/errors.hpp"

namespace mnm::io {
namespace {

using nlohmann::json;

std::string format_g(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  return in;
}

double parse_double(std::string_view field, const std::filesystem::path& path,
                    std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParameterError(path.string() + ":" + std::to_string(line) +
                         ": malformed number '" + std::string(field) + "'");
  }
  return out;
}

std::uint64_t parse_u64(std::string_view field,
                        const std::filesystem::path& path, std::size_t line) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParameterError(path.string() + ":" + std::to_string(line) +
                         ": malformed index '" + std::string(field) + "'");
  }
  return out;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string format_sig12(double v) { return format_g(v, 12); }
std::string format_sig17(double v) { return format_g(v, 17); }

AtomicFileWriter::AtomicFileWriter(std::filesystem::path target)
    : target_(std::move(target)),
      temp_(target_.string() + ".tmp"),
      stream_(temp_, std::ios::binary | std::ios::trunc) {
  if (!stream_) {
    throw IoError("cannot open " + temp_.string() + " for writing");
  }
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    stream_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void AtomicFileWriter::commit() {
  stream_.flush();
  if (!stream_) {
    throw IoError("write to " + temp_.string() + " failed");
  }
  stream_.close();
  std::error_code ec;
  std::filesystem::rename(temp_, target_, ec);
  if (ec) {
    throw IoError("cannot rename " + temp_.string() + " to " +
                  target_.string() + ": " + ec.message());
  }
  committed_ = true;
}

void write_landscape_json(const std::filesystem::path& path,
                          const NmLandscape& landscape) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "{\n";
  out << "  \"n_vars\": " << landscape.n_vars() << ",\n";
  out << "  \"max_order\": " << landscape.max_order() << ",\n";
  out << "  \"sigma\": " << format_sig17(landscape.sigma()) << ",\n";
  out << "  \"seed\": " << landscape.seed() << ",\n";
  out << "  \"terms\": [\n";
  const auto& terms = landscape.terms();
  for (std::size_t k = 0; k < terms.size(); ++k) {
    out << "    {\"indices\": [";
    for (std::size_t i = 0; i < terms[k].indices.size(); ++i) {
      if (i) out << ",";
      out << terms[k].indices[i];
    }
    out << "], \"coefficient\": " << format_sig17(terms[k].coefficient) << "}";
    out << (k + 1 < terms.size() ? ",\n" : "\n");
  }
  out << "  ]\n";
  out << "}\n";
  writer.commit();
}

NmLandscape read_landscape_json(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    const int n_vars = doc.at("n_vars").get<int>();
    const int max_order = doc.at("max_order").get<int>();
    const double sigma = doc.at("sigma").get<double>();
    const std::uint64_t seed = doc.at("seed").get<std::uint64_t>();
    std::vector<InteractionTerm> terms;
    for (const json& t : doc.at("terms")) {
      InteractionTerm term;
      term.indices = t.at("indices").get<std::vector<int>>();
      term.coefficient = t.at("coefficient").get<double>();
      terms.push_back(std::move(term));
    }
    return NmLandscape(n_vars, max_order, sigma, seed, std::move(terms));
  } catch (const json::exception& e) {
    throw ParameterError(path.string() + ": bad landscape document: " +
                         e.what());
  }
}

namespace {

void write_table_header(std::ostream& out, std::size_t cols) {
  out << "solution_index";
  for (std::size_t c = 1; c <= cols; ++c) out << ",f" << c;
  out << "\n";
}

}  // namespace

void write_objective_table_csv(const std::filesystem::path& path,
                               const ObjectiveTable& table) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  write_table_header(out, table.values.cols());
  for (std::size_t s = 0; s < table.values.rows(); ++s) {
    out << s;
    for (std::size_t c = 0; c < table.values.cols(); ++c) {
      out << "," << format_sig12(table.values.at(s, c));
    }
    out << "\n";
  }
  writer.commit();
}

void write_objective_table_json(const std::filesystem::path& path,
                                const ObjectiveTable& table,
                                const MnmProblem& problem) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "{\n";
  out << "  \"n_vars\": " << problem.n_vars() << ",\n";
  out << "  \"normalized\": " << (table.normalized ? "true" : "false")
      << ",\n";
  out << "  \"objectives\": [\n";
  for (int j = 0; j < problem.num_objectives(); ++j) {
    const ObjectiveSpec& spec = problem.objective(j);
    out << "    {\"max_order\": " << spec.landscape.max_order()
        << ", \"sigma\": " << format_sig17(spec.landscape.sigma())
        << ", \"seed\": " << spec.landscape.seed()
        << ", \"term_count\": " << spec.landscape.term_count()
        << ", \"transform\": "
        << (spec.transform == Transform::kNegate ? "\"negate\""
                                                 : "\"identity_sign\"")
        << "}" << (j + 1 < problem.num_objectives() ? ",\n" : "\n");
  }
  out << "  ],\n";
  out << "  \"values\": [\n";
  for (std::size_t s = 0; s < table.values.rows(); ++s) {
    out << "    [";
    for (std::size_t c = 0; c < table.values.cols(); ++c) {
      if (c) out << ",";
      out << format_sig17(table.values.at(s, c));
    }
    out << "]" << (s + 1 < table.values.rows() ? ",\n" : "\n");
  }
  out << "  ]\n";
  out << "}\n";
  writer.commit();
}

ValueMatrix read_table_csv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw ParameterError(path.string() + ": empty table file");
  }
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "solution_index") {
    throw ParameterError(path.string() +
                         ": expected header solution_index,f1,...");
  }
  const std::size_t cols = header.size() - 1;

  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != cols + 1) {
      throw ParameterError(path.string() + ":" + std::to_string(line_no) +
                           ": expected " + std::to_string(cols + 1) +
                           " fields");
    }
    if (parse_u64(fields[0], path, line_no) != rows) {
      throw ParameterError(path.string() + ":" + std::to_string(line_no) +
                           ": solution_index must be consecutive from 0");
    }
    for (std::size_t c = 1; c < fields.size(); ++c) {
      data.push_back(parse_double(fields[c], path, line_no));
    }
    ++rows;
  }
  if (rows == 0) {
    throw ParameterError(path.string() + ": table has no rows");
  }
  ValueMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out.at(r, c) = data[r * cols + c];
    }
  }
  return out;
}

void write_distribution_csv(const std::filesystem::path& path,
                            const DistributionTable& dist) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "solution_index,p\n";
  for (std::size_t s = 0; s < dist.size(); ++s) {
    out << s << "," << format_sig12(dist.probs()[s]) << "\n";
  }
  writer.commit();
}

DistributionTable read_distribution_csv(const std::filesystem::path& path,
                                        int n_vars) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) !=
      std::vector<std::string_view>{"solution_index", "p"}) {
    throw ParameterError(path.string() + ": expected header solution_index,p");
  }
  std::vector<double> probs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw ParameterError(path.string() + ":" + std::to_string(line_no) +
                           ": expected two fields");
    }
    if (parse_u64(fields[0], path, line_no) != probs.size()) {
      throw ParameterError(path.string() + ":" + std::to_string(line_no) +
                           ": solution_index must be consecutive from 0");
    }
    probs.push_back(parse_double(fields[1], path, line_no));
  }
  if (n_vars < 1 || probs.size() != (std::size_t{1} << n_vars)) {
    throw ParameterError(path.string() + ": expected " +
                         std::to_string(std::size_t{1} << n_vars) +
                         " rows for n_vars " + std::to_string(n_vars));
  }
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw ParameterError(path.string() + ": probabilities must be >= 0");
    }
  }
  const double total = pairwise_sum(probs);
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError(path.string() + ": probabilities sum to " +
                         std::to_string(total) + ", expected 1 within 1e-9");
  }
  for (double& p : probs) p /= total;
  return DistributionTable(n_vars, std::move(probs), 1.0,
                           DistributionSource::kExternal);
}

void write_marginals_csv(const std::filesystem::path& path,
                         const UnivariateMarginals& marginals) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "variable,p_one\n";
  for (int i = 1; i <= marginals.n_vars(); ++i) {
    out << i << ","
        << format_sig12(marginals.p_one[static_cast<std::size_t>(i - 1)])
        << "\n";
  }
  writer.commit();
}

void write_front_csv(const std::filesystem::path& path,
                     const FrontResult& front) {
  // Sorted by f1 descending; member_indices are ascending, so a stable
  // sort leaves equal-f1 rows in ascending index order.
  std::vector<std::size_t> order(front.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&front](std::size_t a, std::size_t b) {
                     return front.front_points.at(a, 0) >
                            front.front_points.at(b, 0);
                   });

  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  write_table_header(out, front.front_points.cols());
  for (std::size_t k : order) {
    out << front.member_indices[k];
    for (std::size_t c = 0; c < front.front_points.cols(); ++c) {
      out << "," << format_sig12(front.front_points.at(k, c));
    }
    out << "\n";
  }
  writer.commit();
}

void write_front_comparison_json(const std::filesystem::path& path,
                                 const FrontComparison& comparison,
                                 std::size_t size_a, std::size_t size_b) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  auto write_indices = [&out](const std::vector<std::uint64_t>& xs) {
    out << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out << ",";
      out << xs[i];
    }
    out << "]";
  };
  out << "{\n";
  out << "  \"set_equal\": " << (comparison.set_equal ? "true" : "false")
      << ",\n";
  out << "  \"jaccard\": " << format_sig17(comparison.jaccard) << ",\n";
  out << "  \"size_a\": " << size_a << ",\n";
  out << "  \"size_b\": " << size_b << ",\n";
  out << "  \"only_in_a\": ";
  write_indices(comparison.only_in_a);
  out << ",\n";
  out << "  \"only_in_b\": ";
  write_indices(comparison.only_in_b);
  out << "\n}\n";
  writer.commit();
}

void write_mi_pairs_csv(const std::filesystem::path& path,
                        const MutualInfoMatrix& matrix) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "variable_i,variable_j,mi_nats\n";
  for (int i = 1; i <= matrix.n_vars; ++i) {
    for (int j = i + 1; j <= matrix.n_vars; ++j) {
      out << i << "," << j << "," << format_sig12(matrix.at(i, j)) << "\n";
    }
  }
  writer.commit();
}

void write_sweep_models_csv(const std::filesystem::path& path,
                            const SweepResult& result) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "M,sigma,model_index,seed,mi_max,mi_mean,front_size,front_jaccard,"
         "distinct_value_count\n";
  for (const SweepModelRecord& rec : result.models) {
    out << rec.max_order << "," << format_sig12(rec.sigma) << ","
        << rec.model_index << "," << rec.seed << ","
        << format_sig12(rec.mi_max) << "," << format_sig12(rec.mi_mean) << ","
        << rec.front_size << "," << format_sig12(rec.front_jaccard) << ","
        << rec.distinct_value_count << "\n";
  }
  writer.commit();
}

void write_sweep_aggregate_csv(const std::filesystem::path& path,
                               const SweepResult& result) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  out << "M,sigma,mi_max_mean,mi_max_std,mi_mean_mean,mi_mean_std,"
         "front_size_mean,front_size_std,front_jaccard_mean,"
         "front_jaccard_std,distinct_value_count_mean,"
         "distinct_value_count_std\n";
  for (const SweepCellStats& cell : result.cells) {
    out << cell.max_order << "," << format_sig12(cell.sigma) << ","
        << format_sig12(cell.mi_max_mean) << ","
        << format_sig12(cell.mi_max_std) << ","
        << format_sig12(cell.mi_mean_mean) << ","
        << format_sig12(cell.mi_mean_std) << ","
        << format_sig12(cell.front_size_mean) << ","
        << format_sig12(cell.front_size_std) << ","
        << format_sig12(cell.front_jaccard_mean) << ","
        << format_sig12(cell.front_jaccard_std) << ","
        << format_sig12(cell.distinct_value_count_mean) << ","
        << format_sig12(cell.distinct_value_count_std) << "\n";
  }
  writer.commit();
}

void write_sweep_plot_json(const std::filesystem::path& path,
                           const SweepResult& result) {
  AtomicFileWriter writer(path);
  std::ostream& out = writer.stream();
  const std::size_t n_sigma = result.config.sigma_grid.size();

  auto write_matrix = [&](auto get) {
    out << "[\n";
    for (std::size_t mi = 0; mi < result.config.m_grid.size(); ++mi) {
      out << "    [";
      for (std::size_t si = 0; si < n_sigma; ++si) {
        if (si) out << ",";
        out << format_sig17(get(result.cells[mi * n_sigma + si]));
      }
      out << "]" << (mi + 1 < result.config.m_grid.size() ? ",\n" : "\n");
    }
    out << "  ]";
  };

  out << "{\n";
  out << "  \"n_vars\": " << result.config.n_vars << ",\n";
  out << "  \"temperature\": " << format_sig17(result.config.temperature)
      << ",\n";
  out << "  \"base_seed\": " << result.config.base_seed << ",\n";
  out << "  \"models_per_cell\": " << result.config.models_per_cell << ",\n";
  out << "  \"analyzed_objective\": " << result.config.analyzed_objective
      << ",\n";
  out << "  \"mi_units\": \"nats\",\n";
  out << "  \"m_grid\": [";
  for (std::size_t i = 0; i < result.config.m_grid.size(); ++i) {
    if (i) out << ",";
    out << result.config.m_grid[i];
  }
  out << "],\n";
  out << "  \"sigma_grid\": [";
  for (std::size_t i = 0; i < n_sigma; ++i) {
    if (i) out << ",";
    out << format_sig17(result.config.sigma_grid[i]);
  }
  out << "],\n";
  out << "  \"mi_max_mean\": ";
  write_matrix([](const SweepCellStats& c) { return c.mi_max_mean; });
  out << ",\n";
  out << "  \"mi_max_std\": ";
  write_matrix([](const SweepCellStats& c) { return c.mi_max_std; });
  out << ",\n";
  out << "  \"mi_mean_mean\": ";
  write_matrix([](const SweepCellStats& c) { return c.mi_mean_mean; });
  out << ",\n";
  out << "  \"mi_mean_std\": ";
  write_matrix([](const SweepCellStats& c) { return c.mi_mean_std; });
  out << "\n}\n";
  writer.commit();
}

}  // namespace mnm::io
