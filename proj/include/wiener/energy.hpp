#pragma once

// Additive energies T_k, dissociated sets, additive dimension, level sets
// and scattered shell families.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wiener/config.hpp"
#include "wiener/fourier.hpp"
#include "wiener/zpd.hpp"

namespace wiener {

// T_k(g) = sum over x_1+..+x_k = x'_1+..+x'_k of
//          g(x_1)..g(x_k) conj(g(x'_1))..conj(g(x'_k)),
// evaluated as sum_s |r_k(s)|^2 where r_k is the k-fold convolution of g.
double t_k_direct(const SparseFunction& g, int k, const Config& cfg = {});

// p^{d(2k-1)} sum_xi |g^(xi)|^{2k}.
double t_k_spectral(const SparseFunction& g, int k, const Config& cfg = {});

// Literal enumeration of all 2k-tuples from the support. Cost |S|^{2k};
// intended for |S| <= 8.
double t_k_enumerate(const SparseFunction& g, int k, const Config& cfg = {});

// T_k of the indicator of a finite set of integers (addition in Z, no
// reduction). Returns the exact count as a double.
double t_k_integers(std::span<const std::int64_t> set, int k, const Config& cfg = {});

struct DissociationCertificate {
  bool dissociated = true;
  // The tested set, deduplicated and sorted.
  std::vector<ZpVector> elements;
  // eps per element (aligned with elements); empty when dissociated. The
  // first nonzero entry is +1.
  std::vector<int> witness;

  // True when the witness is nonzero and sums to zero, or when there is no
  // witness and dissociated is set.
  bool witness_holds(const GroupContext& ctx) const;
};

// Exact test via meet-in-the-middle over the 3^|set| sign patterns.
// Throws BudgetError above cfg.dissociation_cap elements.
DissociationCertificate is_dissociated(std::span<const ZpVector> set, const GroupContext& ctx,
                                       const Config& cfg = {});

enum class DimensionMode { exact, greedy };

struct AdditiveDimension {
  DimensionMode mode = DimensionMode::exact;
  // For greedy mode this is a lower bound on the exact value.
  std::size_t value = 0;
  std::vector<ZpVector> subset;
};

// exact: maximum-cardinality dissociated subset, lexicographically smallest
// among the maximum ones. greedy: lexicographic scan keeping every element
// that preserves dissociativity (an inclusion-maximal subset).
AdditiveDimension additive_dimension(std::span<const ZpVector> set, const GroupContext& ctx,
                                     DimensionMode mode, const Config& cfg = {});

// All {-1,0,1}-combinations of the elements of set (including 0), as indices.
std::vector<std::uint64_t> signed_subset_sums(std::span<const ZpVector> set,
                                              const GroupContext& ctx, const Config& cfg = {});

struct LevelSetDecomposition {
  // levels[j - 1] holds S_j = {x : 2^{j-1} <= |f(x)| < 2^j}.
  std::vector<std::vector<ZpVector>> levels;

  std::size_t count() const noexcept { return levels.size(); }
  const std::vector<ZpVector>& level(int j) const { return levels.at(static_cast<std::size_t>(j - 1)); }
};

// Moduli in [1 - kUnitSlack, 1) count as 1.
inline constexpr double kUnitSlack = 1e-12;

// Throws HypothesisError if some value on the support has modulus < 1.
LevelSetDecomposition level_sets(const SparseFunction& f);
// Index j with 2^{j-1} <= a < 2^j; a >= 1.
int level_index(double a);

struct ScatteredShell {
  int index = 0;  // i, with the shell inside (4^i m / 2, 4^i m] in modulus
  int level = 0;  // l = 2i, the D_l \ D_{l-1} ring it was drawn from
  std::vector<std::int64_t> elements;
};

struct ScatteredFamily {
  std::int64_t m = 1;
  std::size_t shell_size = 0;  // N
  int max_level = 0;           // l0, maximal with 2^{l0} m <= p/3
  std::vector<ScatteredShell> shells;
  // First l in 1..l0 with |D_l \ D_{l-1}| < N, if any.
  std::optional<int> thin_level;

  std::size_t shell_count() const noexcept { return shells.size(); }  // I
  std::vector<std::int64_t> elements() const;
  // Checks shell sizes, range membership and pairwise disjointness.
  bool well_formed() const;
};

// B is a set of residues of Z_p; shells D_l use canonical absolute values.
ScatteredFamily build_scattered_family(std::span<const Residue> b, std::int64_t m, std::size_t n,
                                       const GroupContext& ctx);

// 2^{8k} k^k I^k N^{2k-1}
double scattered_energy_bound(int k, std::size_t shells, std::size_t shell_size);

// T_k(Lambda)^{1/k} / (k |Lambda|). Throws HypothesisError for a set that
// is not dissociated.
double rudin_ratio(std::span<const ZpVector> lambda, int k, const GroupContext& ctx,
                   const Config& cfg = {});

}  // namespace wiener
