#pragma once

#include <cstdint>
#include <vector>

#include "mnm/landscape.hpp"
#include "mnm/limits.hpp"
#include "mnm/matrix.hpp"

namespace mnm {

/// Length-N assignment over {0,1}, addressable as a solution index in
/// [0, 2^N). Bit order is fixed globally: variable x_i lives in bit
/// position i-1, so the least-significant bit is x_1. Objective tables,
/// distribution tables and every exported file share this row order.
struct BitVector {
  int n_vars = 0;
  std::uint64_t bits = 0;

  static BitVector from_index(std::uint64_t index, int n_vars);
  std::uint64_t to_index() const { return bits; }

  /// x_i for 1-based i.
  int bit(int i) const { return static_cast<int>((bits >> (i - 1)) & 1u); }
};

/// The two sign transformations mapping {0,1} onto {-1,+1}:
/// kNegate is y_i = -2 x_i + 1, kIdentitySign is z_i = 2 x_i - 1.
/// A bi-objective problem gives objective 1 the kNegate map and objective 2
/// the kIdentitySign map, which pins the objective-1 maximum at the
/// all-zeros string and the objective-2 maximum at the all-ones string.
enum class Transform { kNegate, kIdentitySign };

int apply_transform(Transform t, int bit);
SpinVector to_spins(const BitVector& x, Transform t);

/// One objective: a landscape plus the input transformation feeding it.
struct ObjectiveSpec {
  NmLandscape landscape;
  Transform transform;
};

/// m >= 2 objectives over a shared bit string.
class MnmProblem {
 public:
  explicit MnmProblem(std::vector<ObjectiveSpec> objectives);

  int n_vars() const { return n_vars_; }
  int num_objectives() const { return static_cast<int>(objectives_.size()); }
  const ObjectiveSpec& objective(int i) const {
    return objectives_[static_cast<std::size_t>(i)];
  }
  const std::vector<ObjectiveSpec>& objectives() const { return objectives_; }

 private:
  int n_vars_;
  std::vector<ObjectiveSpec> objectives_;
};

/// Nested bi-objective construction: objective 1 is the parent truncated to
/// order1 under kNegate, objective 2 the parent truncated to order2 under
/// kIdentitySign. Coefficients of shared orders are identical by
/// construction. Requires 1 <= order1 <= order2 <= parent.max_order().
MnmProblem make_bi_objective(const NmLandscape& parent, int order1,
                             int order2);

double evaluate_objective(const ObjectiveSpec& spec, const BitVector& x);

/// Objective values for every solution index, plus the normalization state.
struct ObjectiveTable {
  ValueMatrix values;  // 2^N rows, m columns, row index == solution index
  bool normalized = false;
};

/// Evaluates all 2^N solutions for every objective. Row s is bit-identical
/// to evaluate_objective on the bit pattern of s for any worker count.
///
/// With normalize set, each column i is first divided by the term count
/// l_i of its objective, then min-max rescaled to [0,1]. Both steps are
/// strictly increasing affine maps, so rankings, argmax sets and dominance
/// relations are untouched. A constant column raises NormalizationError.
ObjectiveTable full_table(const MnmProblem& problem, bool normalize,
                          unsigned workers = 1);

/// The second normalization step, exposed for reuse on raw tables.
void min_max_rescale_columns(ValueMatrix& table);

}  // namespace mnm
