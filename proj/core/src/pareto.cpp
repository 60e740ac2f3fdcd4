#include "mnm/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mnm/errors.hpp"

namespace mnm {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ParameterError("dominates: vectors must have equal length");
  }
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

namespace {

FrontResult collect(const ValueMatrix& table,
                    std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  FrontResult out;
  out.front_points = ValueMatrix(members.size(), table.cols());
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto row = table.row(static_cast<std::size_t>(members[k]));
    for (std::size_t c = 0; c < table.cols(); ++c) {
      out.front_points.at(k, c) = row[c];
    }
  }
  out.member_indices = std::move(members);
  return out;
}

FrontResult pairwise_front(const ValueMatrix& table) {
  const std::size_t rows = table.rows();
  std::vector<std::uint64_t> members;
  for (std::size_t s = 0; s < rows; ++s) {
    const auto candidate = table.row(s);
    bool dominated = false;
    for (std::size_t t = 0; t < rows && !dominated; ++t) {
      if (t != s && dominates(table.row(t), candidate)) dominated = true;
    }
    if (!dominated) members.push_back(s);
  }
  return collect(table, std::move(members));
}

// Bi-objective sweep: scan distinct f1 values in descending order and keep
// the rows of a group whose f2 attains the group maximum, provided that
// maximum strictly beats everything seen at higher f1. Ties in both
// coordinates all survive, matching the pairwise filter.
FrontResult sort_sweep_front(const ValueMatrix& table) {
  const std::size_t rows = table.rows();
  std::vector<std::uint64_t> order(rows);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::sort(order.begin(), order.end(),
            [&table](std::uint64_t a, std::uint64_t b) {
              const double a1 = table.at(a, 0), b1 = table.at(b, 0);
              if (a1 != b1) return a1 > b1;
              const double a2 = table.at(a, 1), b2 = table.at(b, 1);
              if (a2 != b2) return a2 > b2;
              return a < b;
            });

  std::vector<std::uint64_t> members;
  double best_f2 = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < rows) {
    std::size_t group_end = i + 1;
    const double f1 = table.at(order[i], 0);
    while (group_end < rows && table.at(order[group_end], 0) == f1) {
      ++group_end;
    }
    const double group_max = table.at(order[i], 1);
    if (group_max > best_f2) {
      for (std::size_t k = i; k < group_end; ++k) {
        if (table.at(order[k], 1) == group_max) {
          members.push_back(order[k]);
        } else {
          break;  // sorted descending within the group
        }
      }
      best_f2 = group_max;
    }
    i = group_end;
  }
  return collect(table, std::move(members));
}

}  // namespace

FrontResult pareto_front(const ValueMatrix& table, FrontAlgorithm algorithm) {
  if (table.rows() == 0 || table.cols() == 0) {
    throw ParameterError("pareto_front: table must be non-empty");
  }
  for (double v : table.data()) {
    if (!std::isfinite(v)) {
      throw ParameterError("pareto_front: table entries must be finite");
    }
  }
  switch (algorithm) {
    case FrontAlgorithm::kPairwise:
      return pairwise_front(table);
    case FrontAlgorithm::kSortSweep:
      if (table.cols() != 2) {
        throw ParameterError("pareto_front: sort-sweep requires m == 2");
      }
      return sort_sweep_front(table);
    case FrontAlgorithm::kAuto:
    default:
      return table.cols() == 2 ? sort_sweep_front(table)
                               : pairwise_front(table);
  }
}

FrontResult front_from_distributions(
    const std::vector<DistributionTable>& dists) {
  if (dists.empty()) {
    throw ParameterError("front_from_distributions: need at least one table");
  }
  const int n = dists.front().n_vars();
  for (const DistributionTable& d : dists) {
    if (d.n_vars() != n) {
      throw ParameterError(
          "front_from_distributions: tables must share n_vars");
    }
  }
  ValueMatrix table(dists.front().size(), dists.size());
  for (std::size_t c = 0; c < dists.size(); ++c) {
    const std::vector<double>& probs = dists[c].probs();
    for (std::size_t s = 0; s < probs.size(); ++s) {
      table.at(s, c) = probs[s];
    }
  }
  return pareto_front(table);
}

FrontComparison compare_fronts(const FrontResult& a, const FrontResult& b) {
  FrontComparison out;
  std::set_difference(a.member_indices.begin(), a.member_indices.end(),
                      b.member_indices.begin(), b.member_indices.end(),
                      std::back_inserter(out.only_in_a));
  std::set_difference(b.member_indices.begin(), b.member_indices.end(),
                      a.member_indices.begin(), a.member_indices.end(),
                      std::back_inserter(out.only_in_b));
  const std::size_t union_size =
      a.size() + out.only_in_b.size();
  const std::size_t inter_size = a.size() - out.only_in_a.size();
  out.jaccard = union_size == 0
                    ? 1.0
                    : static_cast<double>(inter_size) /
                          static_cast<double>(union_size);
  out.set_equal = out.only_in_a.empty() && out.only_in_b.empty();
  return out;
}

}  // namespace mnm
