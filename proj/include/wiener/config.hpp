#pragma once

#include <cstdint>

namespace wiener {

// Resource limits and numeric knobs shared by every module. A default
// constructed Config reproduces the documented defaults.
struct Config {
  // Largest p^d for which a dense spectrum table may be allocated.
  std::uint64_t dense_budget = std::uint64_t{1} << 24;
  // Cap on projective direction enumeration ((p^d - 1)/(p - 1) entries).
  std::uint64_t enumeration_cap = std::uint64_t{1} << 24;
  // Cap on elementary steps of combinatorial searches (T_k tables,
  // exhaustive hyperplane scans, Dirichlet scans).
  std::uint64_t compute_budget = std::uint64_t{1} << 34;
  // One-dimensional transforms of length > fast_threshold use the Rader path.
  std::uint64_t fast_threshold = 64;
  // Largest |Lambda| accepted by the exact dissociativity test.
  std::size_t dissociation_cap = 20;
  // Largest |S| accepted by exact additive dimension.
  std::size_t dimension_cap = 16;
  // Line search requires density >= density_constant / p.
  double density_constant = 1.0;
  // Retry limit for sampled hyperplane search.
  std::uint64_t sample_limit = 1u << 20;
  // Absolute threshold below which inverse transform values are dropped.
  double zero_clamp = 1e-10;
  // Relative tolerance applied by every check when positive; zero keeps the
  // per-check defaults (1e-9 for norms, 1e-6 for energies).
  double tolerance = 0.0;
};

}  // namespace wiener
