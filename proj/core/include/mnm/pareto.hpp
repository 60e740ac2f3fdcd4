#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mnm/distribution.hpp"
#include "mnm/matrix.hpp"

namespace mnm {

/// Non-dominated set of a table. member_indices are row indices in
/// ascending order; front_points holds the matching objective vectors row
/// by row. Every solution whose objective vector ties a non-dominated
/// vector is a member: genotypes are kept distinct even when they collide
/// in objective space.
struct FrontResult {
  std::vector<std::uint64_t> member_indices;
  ValueMatrix front_points;

  std::size_t size() const { return member_indices.size(); }
};

struct FrontComparison {
  bool set_equal = false;
  std::vector<std::uint64_t> only_in_a;
  std::vector<std::uint64_t> only_in_b;
  double jaccard = 0.0;  // |A intersect B| / |A union B|, 1.0 when both empty
};

enum class FrontAlgorithm {
  kAuto,      // sort-sweep when m == 2, pairwise otherwise
  kPairwise,  // O(S^2 m) dominance filter
  kSortSweep  // O(S log S), bi-objective only
};

/// Strict Pareto dominance under maximization: a >= b everywhere and
/// a > b somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Exact non-dominated set of an S x m table. The pairwise and sort-sweep
/// paths implement the same tie policy and must agree; tests cross-check
/// them against each other and against a brute-force oracle.
FrontResult pareto_front(const ValueMatrix& table,
                         FrontAlgorithm algorithm = FrontAlgorithm::kAuto);

/// Front of the (2^N x m) matrix whose columns are the given per-objective
/// probability tables. With Boltzmann tables this reproduces the
/// objective-value front exactly, because the Boltzmann map is strictly
/// increasing per objective.
FrontResult front_from_distributions(
    const std::vector<DistributionTable>& dists);

FrontComparison compare_fronts(const FrontResult& a, const FrontResult& b);

}  // namespace mnm
