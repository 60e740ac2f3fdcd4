#include "mnm/mop.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "mnm/errors.hpp"
#include "mnm/parallel.hpp"

namespace mnm {

BitVector BitVector::from_index(std::uint64_t index, int n_vars) {
  if (n_vars < 1 || n_vars > 63) {
    throw ParameterError("BitVector: n_vars must lie in [1, 63]");
  }
  if (index >> n_vars) {
    throw ParameterError("BitVector: index " + std::to_string(index) +
                         " out of range for n_vars " + std::to_string(n_vars));
  }
  return BitVector{n_vars, index};
}

int apply_transform(Transform t, int bit) {
  if (bit != 0 && bit != 1) {
    throw ParameterError("apply_transform: bit must be 0 or 1");
  }
  return t == Transform::kNegate ? -2 * bit + 1 : 2 * bit - 1;
}

SpinVector to_spins(const BitVector& x, Transform t) {
  SpinVector spins;
  spins.values.resize(static_cast<std::size_t>(x.n_vars));
  for (int i = 1; i <= x.n_vars; ++i) {
    spins.values[static_cast<std::size_t>(i - 1)] = apply_transform(t, x.bit(i));
  }
  return spins;
}

MnmProblem::MnmProblem(std::vector<ObjectiveSpec> objectives)
    : objectives_(std::move(objectives)) {
  if (objectives_.size() < 2) {
    throw ParameterError("MnmProblem: need at least two objectives");
  }
  n_vars_ = objectives_.front().landscape.n_vars();
  for (const ObjectiveSpec& spec : objectives_) {
    if (spec.landscape.n_vars() != n_vars_) {
      throw ParameterError("MnmProblem: objectives must share n_vars");
    }
  }
}

MnmProblem make_bi_objective(const NmLandscape& parent, int order1,
                             int order2) {
  if (order1 < 1 || order1 > order2 || order2 > parent.max_order()) {
    throw ParameterError(
        "make_bi_objective: need 1 <= order1 <= order2 <= parent.max_order()");
  }
  std::vector<ObjectiveSpec> objectives;
  objectives.push_back({truncate(parent, order1), Transform::kNegate});
  objectives.push_back({truncate(parent, order2), Transform::kIdentitySign});
  return MnmProblem(std::move(objectives));
}

double evaluate_objective(const ObjectiveSpec& spec, const BitVector& x) {
  if (x.n_vars != spec.landscape.n_vars()) {
    throw ParameterError("evaluate_objective: bit vector length mismatch");
  }
  return evaluate(spec.landscape, to_spins(x, spec.transform));
}

namespace {

// Per-term data for the enumeration inner loop. The spin product of term U
// at solution s is -1 iff popcount(s & mask) + base_parity is odd:
// under kIdentitySign the product is (-1)^(|U| - popcount), under kNegate
// it is (-1)^popcount. Same summation order as evaluate(), so rows match
// the direct evaluator bit for bit.
struct MaskTerm {
  std::uint64_t mask;
  int base_parity;
  double coefficient;
};

std::vector<MaskTerm> mask_terms(const ObjectiveSpec& spec) {
  std::vector<MaskTerm> out;
  out.reserve(spec.landscape.term_count());
  for (const InteractionTerm& term : spec.landscape.terms()) {
    std::uint64_t mask = 0;
    for (int idx : term.indices) mask |= std::uint64_t{1} << (idx - 1);
    const int base_parity =
        spec.transform == Transform::kIdentitySign ? term.order() & 1 : 0;
    out.push_back({mask, base_parity, term.coefficient});
  }
  return out;
}

}  // namespace

ObjectiveTable full_table(const MnmProblem& problem, bool normalize,
                          unsigned workers) {
  const int n = problem.n_vars();
  if (n > kMaxFullEnumerationVars) {
    throw ResourceError("full enumeration limited to N <= " +
                        std::to_string(kMaxFullEnumerationVars) + ", got N = " +
                        std::to_string(n));
  }
  const std::size_t rows = std::size_t{1} << n;
  const int m = problem.num_objectives();

  ObjectiveTable table;
  table.values = ValueMatrix(rows, static_cast<std::size_t>(m));
  table.normalized = normalize;

  for (int j = 0; j < m; ++j) {
    const std::vector<MaskTerm> terms = mask_terms(problem.objective(j));
    ValueMatrix& vm = table.values;
    parallel_for(rows, workers, [&terms, &vm, j](std::size_t s) {
      double total = 0.0;
      for (const MaskTerm& t : terms) {
        const int parity =
            (std::popcount(static_cast<std::uint64_t>(s) & t.mask) +
             t.base_parity) & 1;
        total += parity ? -t.coefficient : t.coefficient;
      }
      vm.at(s, static_cast<std::size_t>(j)) = total;
    }, 256);
  }

  if (normalize) {
    for (int j = 0; j < m; ++j) {
      const double scale =
          static_cast<double>(problem.objective(j).landscape.term_count());
      for (std::size_t s = 0; s < rows; ++s) {
        table.values.at(s, static_cast<std::size_t>(j)) /= scale;
      }
    }
    min_max_rescale_columns(table.values);
  }
  return table;
}

void min_max_rescale_columns(ValueMatrix& table) {
  if (table.rows() == 0) {
    throw ParameterError("min_max_rescale_columns: empty table");
  }
  for (std::size_t c = 0; c < table.cols(); ++c) {
    double lo = table.at(0, c);
    double hi = table.at(0, c);
    for (std::size_t r = 1; r < table.rows(); ++r) {
      lo = std::min(lo, table.at(r, c));
      hi = std::max(hi, table.at(r, c));
    }
    if (!(hi > lo)) {
      throw NormalizationError("column " + std::to_string(c + 1) +
                               " is constant (max == min), cannot rescale");
    }
    const double range = hi - lo;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      table.at(r, c) = (table.at(r, c) - lo) / range;
    }
  }
}

}  // namespace mnm
