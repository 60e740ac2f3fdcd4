#pragma once

#include <cstdint>
#include <vector>

#include "mnm/rng.hpp"

namespace mnm {

/// One (variable subset, coefficient) pair of an interaction model.
/// Indices are 1-based and strictly increasing; the coefficient is
/// non-negative. The subset size is the order of the interaction.
struct InteractionTerm {
  std::vector<int> indices;
  double coefficient = 0.0;

  int order() const { return static_cast<int>(indices.size()); }
};

/// Length-N assignment over {-1, +1}.
struct SpinVector {
  std::vector<int> values;

  static SpinVector all_ones(int n_vars) {
    return SpinVector{std::vector<int>(static_cast<std::size_t>(n_vars), 1)};
  }
  int size() const { return static_cast<int>(values.size()); }
};

/// A single-objective NM model: every non-empty subset of {1..N} with size
/// at most M carries one non-negative coefficient, sampled as
/// exp(-|N(0, sigma)|). Instances are immutable after construction and a
/// pure function of (n_vars, max_order, sigma, seed).
class NmLandscape {
 public:
  /// Validates every invariant: canonical term order (ascending size, then
  /// lexicographic), exactly one term per subset, non-negative coefficients,
  /// indices in range. Throws ParameterError on violation.
  NmLandscape(int n_vars, int max_order, double sigma, std::uint64_t seed,
              std::vector<InteractionTerm> terms);

  int n_vars() const { return n_vars_; }
  int max_order() const { return max_order_; }
  double sigma() const { return sigma_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<InteractionTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

 private:
  int n_vars_;
  int max_order_;
  double sigma_;
  std::uint64_t seed_;
  std::vector<InteractionTerm> terms_;
};

/// exp(-|g|) for one Gaussian draw g ~ N(0, sigma). Always in (0, 1].
/// Larger sigma pushes coefficients toward 0 and clumps fitness values.
double sample_coefficient(double sigma, Rng& rng);

/// All non-empty subsets of {1..n_vars} with size <= max_order, ascending
/// by size and lexicographic within a size. This canonical order is what
/// lets a truncated landscape share its parent's coefficient stream.
std::vector<std::vector<int>> enumerate_term_sets(int n_vars, int max_order);

/// Number of such subsets: sum over k=1..max_order of C(n_vars, k).
/// Throws ResourceError when the count exceeds the term budget.
std::uint64_t term_count(int n_vars, int max_order);

/// Draws one coefficient per term set, in canonical order, from a stream
/// seeded with seed.
NmLandscape generate_landscape(int n_vars, int max_order, double sigma,
                               std::uint64_t seed);

/// Keeps exactly the terms of order <= new_max_order, coefficients
/// untouched. Truncation of a landscape equals direct generation at the
/// lower order with the same seed, bit for bit.
NmLandscape truncate(const NmLandscape& landscape, int new_max_order);

/// Sum over terms of coefficient * product of the selected spins, taken in
/// canonical term order. The summation order is part of the contract:
/// left-to-right accumulation keeps rounding monotone, so the all-ones
/// maximum survives in floating point.
double evaluate(const NmLandscape& landscape, const SpinVector& spins);

}  // namespace mnm
