#include "mnm/landscape.hpp"

#include <cmath>
#include <string>

#include "mnm/errors.hpp"

namespace mnm {
namespace {

// Enough for every desk-scale configuration; stops runaway (N, M) requests
// before they allocate gigabytes of terms.
constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 24;

void check_generation_params(int n_vars, int max_order, double sigma) {
  if (n_vars < 1 || n_vars > 63) {
    throw ParameterError("n_vars must lie in [1, 63], got " +
                         std::to_string(n_vars));
  }
  if (max_order < 1 || max_order > n_vars) {
    throw ParameterError("max_order must lie in [1, n_vars], got " +
                         std::to_string(max_order));
  }
  if (!(sigma > 0.0)) {
    throw ParameterError("sigma must be positive");
  }
}

// Strict ordering: ascending size, then lexicographic on indices.
bool canonical_less(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

NmLandscape::NmLandscape(int n_vars, int max_order, double sigma,
                         std::uint64_t seed,
                         std::vector<InteractionTerm> terms)
    : n_vars_(n_vars),
      max_order_(max_order),
      sigma_(sigma),
      seed_(seed),
      terms_(std::move(terms)) {
  check_generation_params(n_vars_, max_order_, sigma_);
  const std::uint64_t expected = mnm::term_count(n_vars_, max_order_);
  if (terms_.size() != expected) {
    throw ParameterError("landscape must carry one term per subset: expected " +
                         std::to_string(expected) + ", got " +
                         std::to_string(terms_.size()));
  }
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const InteractionTerm& t = terms_[k];
    if (t.indices.empty() || t.order() > max_order_) {
      throw ParameterError("term " + std::to_string(k) +
                           ": order must lie in [1, max_order]");
    }
    int prev = 0;
    for (int idx : t.indices) {
      if (idx <= prev || idx > n_vars_) {
        throw ParameterError("term " + std::to_string(k) +
                             ": indices must be strictly increasing in [1, N]");
      }
      prev = idx;
    }
    if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient)) {
      throw ParameterError("term " + std::to_string(k) +
                           ": coefficient must be finite and non-negative");
    }
    if (k > 0 && !canonical_less(terms_[k - 1].indices, t.indices)) {
      throw ParameterError("terms must be in canonical order (ascending size, "
                           "then lexicographic) without duplicates");
    }
  }
}

double sample_coefficient(double sigma, Rng& rng) {
  if (!(sigma > 0.0)) {
    throw ParameterError("sample_coefficient: sigma must be positive");
  }
  return std::exp(-std::abs(rng.gaussian(sigma)));
}

std::uint64_t term_count(int n_vars, int max_order) {
  if (n_vars < 1 || max_order < 1 || max_order > n_vars) {
    throw ParameterError("term_count: need 1 <= max_order <= n_vars");
  }
  // The budget check keeps every intermediate far below 2^64: binom can
  // overshoot kMaxTerms by at most a factor of n_vars before the loop exits.
  std::uint64_t total = 0;
  std::uint64_t binom = 1;
  for (int k = 1; k <= max_order; ++k) {
    binom = binom * static_cast<std::uint64_t>(n_vars - k + 1) /
            static_cast<std::uint64_t>(k);
    total += binom;
    if (total > kMaxTerms) {
      throw ResourceError("term count for N=" + std::to_string(n_vars) +
                          ", M=" + std::to_string(max_order) +
                          " exceeds the 2^24 term budget");
    }
  }
  return total;
}

std::vector<std::vector<int>> enumerate_term_sets(int n_vars, int max_order) {
  if (n_vars < 1) {
    throw ParameterError("enumerate_term_sets: n_vars must be positive");
  }
  if (max_order < 1 || max_order > n_vars) {
    throw ParameterError("enumerate_term_sets: need 1 <= max_order <= n_vars");
  }
  std::vector<std::vector<int>> sets;
  sets.reserve(term_count(n_vars, max_order));

  for (int k = 1; k <= max_order; ++k) {
    // Lexicographic k-combinations of {1..n_vars}.
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
    for (;;) {
      sets.push_back(comb);
      int pos = k - 1;
      while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == n_vars - (k - 1 - pos)) {
        --pos;
      }
      if (pos < 0) break;
      ++comb[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) {
        comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }
  return sets;
}

NmLandscape generate_landscape(int n_vars, int max_order, double sigma,
                               std::uint64_t seed) {
  check_generation_params(n_vars, max_order, sigma);
  std::vector<std::vector<int>> sets = enumerate_term_sets(n_vars, max_order);
  Rng rng(seed);
  std::vector<InteractionTerm> terms;
  terms.reserve(sets.size());
  for (auto& indices : sets) {
    terms.push_back(InteractionTerm{std::move(indices),
                                    sample_coefficient(sigma, rng)});
  }
  return NmLandscape(n_vars, max_order, sigma, seed, std::move(terms));
}

NmLandscape truncate(const NmLandscape& landscape, int new_max_order) {
  if (new_max_order < 1 || new_max_order > landscape.max_order()) {
    throw ParameterError("truncate: new_max_order must lie in [1, max_order]");
  }
  // Canonical order sorts by size, so the kept terms are a prefix.
  const std::uint64_t keep = term_count(landscape.n_vars(), new_max_order);
  std::vector<InteractionTerm> terms(landscape.terms().begin(),
                                     landscape.terms().begin() +
                                         static_cast<std::ptrdiff_t>(keep));
  return NmLandscape(landscape.n_vars(), new_max_order, landscape.sigma(),
                     landscape.seed(), std::move(terms));
}

double evaluate(const NmLandscape& landscape, const SpinVector& spins) {
  if (spins.size() != landscape.n_vars()) {
    throw ParameterError("evaluate: spin vector length " +
                         std::to_string(spins.size()) +
                         " does not match n_vars " +
                         std::to_string(landscape.n_vars()));
  }
  for (int s : spins.values) {
    if (s != 1 && s != -1) {
      throw ParameterError("evaluate: spin values must be -1 or +1");
    }
  }
  double total = 0.0;
  for (const InteractionTerm& term : landscape.terms()) {
    int sign = 1;
    for (int idx : term.indices) {
      sign *= spins.values[static_cast<std::size_t>(idx - 1)];
    }
    total += sign > 0 ? term.coefficient : -term.coefficient;
  }
  return total;
}

}  // namespace mnm
