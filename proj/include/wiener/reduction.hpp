#pragma once

// Constructive reductions: balanced hyperplanes and lines in Z_p^d,
// restriction to a line, Dirichlet rescaling of a support in Z_p, and the
// linear change of variables that separates first coordinates.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "wiener/config.hpp"
#include "wiener/fourier.hpp"
#include "wiener/zpd.hpp"

namespace wiener {

struct BalanceReport {
  // Dimension of the ambient space the step was performed in.
  int dimension = 0;
  std::variant<Hyperplane, Line> object;
  std::size_t set_size = 0;  // |A| in the ambient space of this step
  std::size_t count = 0;     // |A cap object|
  double target = 0;         // delta p^{n-1} = |A| / p
  double deviation = 0;      // |count - target|
  double bound = 0;          // delta^{1/2} p^{(n-1)/2} = sqrt(|A| / p)
  double theta = 0;          // deviation / bound (0 when bound = 0)
  // Exact integer form of deviation <= bound: (p count - |A|)^2 <= |A| p.
  bool within_bound = false;
};

enum class BalanceMode { exhaustive, sampled };

// Throws InvalidArgument for d < 2, HypothesisError for an empty set,
// BudgetError when the scan exceeds the budget, and Error when sampling
// hits cfg.sample_limit.
BalanceReport find_balanced_hyperplane(std::span<const ZpVector> set, const GroupContext& ctx,
                                       BalanceMode mode = BalanceMode::exhaustive,
                                       std::uint64_t seed = 0, const Config& cfg = {});

struct LineSearchResult {
  Line line;  // in the original coordinates
  std::size_t count = 0;
  std::vector<BalanceReport> steps;
  // Sum over steps of delta_k^{1/2} p^{-(n_k - 1)/2}: the bookkept
  // guarantee on |count / p - delta|.
  double density_bound = 0;
  double density = 0;       // |A| / p^d
  double line_density = 0;  // count / p
};

// Requires d >= 2 and |A| / p^d >= cfg.density_constant / p.
LineSearchResult find_balanced_line(std::span<const ZpVector> set, const GroupContext& ctx,
                                    const Config& cfg = {});

// Invertible affine map sending {x . eta = u} onto {x_d = 0}: the last row of
// the linear part is eta, the other rows are the standard basis vectors
// skipping eta's first nonzero coordinate.
AffineMap flatten_hyperplane(const Hyperplane& h, const GroupContext& ctx);

// u -> f(u b + c), a function on Z_p.
SparseFunction restrict_to_line(const SparseFunction& f, const Line& l);

struct DirichletRescaling {
  std::int64_t p = 0;
  Residue q = 0;
  std::int64_t max_abs = 0;  // max over lambda of |q lambda|
  // Largest integer B with B^n <= p^{n-1}, n = |Lambda|, so that
  // |q lambda| <= p^{1-1/n} iff |q lambda| <= B.
  std::int64_t bound = 0;
  double bound_real = 0;  // p^{1-1/n}
  bool exhaustive = true;  // q is the smallest valid one
  std::vector<std::int64_t> rescaled;  // signed representatives of q Lambda
};

// Smallest q in [1, p) with max |q lambda| <= p^{1-1/|Lambda|}. Above
// cfg.compute_budget a box-pigeonhole search is used instead; that result
// is valid but not necessarily minimal.
DirichletRescaling find_dirichlet_q(std::span<const Residue> lambda, const GroupContext& ctx,
                                    const Config& cfg = {});

struct RescaledFunction {
  DirichletRescaling dirichlet;
  SparseFunction rescaled;  // F(y) = f(q^{-1} y), supported on qS
  std::vector<std::int64_t> support;  // signed representatives of qS, ascending
  bool within_third = false;          // every |b| <= p/3
};

// Throws HypothesisError when some support point is not a {-1,0,1}
// combination of lambda.
RescaledFunction rescale_support(const SparseFunction& f, std::span<const Residue> lambda,
                                  const Config& cfg = {});

struct SeparatingMap {
  AffineMap map;                        // linear, invertible
  ZpVector row;                         // t, the first row
  std::vector<Residue> first_coords;    // A', ascending
};

// Requires d >= 2 and |A|^2 < 2p. t is the lexicographically smallest
// nonzero vector with t . (a_i - a_j) != 0 for all pairs.
SeparatingMap find_separating_map(std::span<const ZpVector> set, const GroupContext& ctx);

// h(x) = f(t^{-1} x), so supp h = t(supp f).
SparseFunction pushforward(const SparseFunction& f, const AffineMap& t);

// For h whose support has distinct first coordinates: the one-dimensional
// Wiener norms of x -> h(a_x) e_p(-(y_2 xi_2 + .. + y_d xi_d)), one per
// (xi_2, .., xi_d) in index order. Their mean equals the Wiener norm of h.
std::vector<double> separated_inner_norms(const SparseFunction& h, const Config& cfg = {});

}  // namespace wiener
