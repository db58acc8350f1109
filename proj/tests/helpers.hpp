#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wiener/fourier.hpp"
#include "wiener/random.hpp"
#include "wiener/zpd.hpp"

namespace helpers {

inline std::vector<wiener::ZpVector> random_set(wiener::Rng& rng, const wiener::GroupContext& ctx,
                                                std::size_t size, bool nonzero = false) {
  std::vector<std::uint64_t> idx;
  while (idx.size() < size) {
    const auto i = rng.below(ctx.order());
    if (nonzero && i == 0) continue;
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  std::vector<wiener::ZpVector> out;
  for (auto i : idx) out.push_back(ctx.from_index(i));
  return out;
}

inline wiener::Complex random_complex(wiener::Rng& rng, double lo = 0.25, double hi = 4.0) {
  return std::polar(lo + (hi - lo) * rng.unit(), 2 * std::numbers::pi * rng.unit());
}

inline wiener::SparseFunction random_function(wiener::Rng& rng, const wiener::GroupContext& ctx,
                                              std::size_t size, double lo = 0.25,
                                              double hi = 4.0) {
  wiener::SparseFunction f(ctx);
  for (const auto& x : random_set(rng, ctx, size)) f.set(x, random_complex(rng, lo, hi));
  return f;
}

inline std::vector<wiener::Complex> random_table(wiener::Rng& rng, std::size_t n) {
  std::vector<wiener::Complex> v(n);
  for (auto& c : v) c = {2 * rng.unit() - 1, 2 * rng.unit() - 1};
  return v;
}

}  // namespace helpers
