#pragma once

namespace mnm {

/// Hard cap on exhaustive enumeration of the search space: 2^26 rows.
/// Everything that materializes a per-solution table honors this guard.
constexpr int kMaxFullEnumerationVars = 26;

}  // namespace mnm
