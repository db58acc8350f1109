#pragma once

// Fourier analysis on Z_p^d with the 1/|G| forward normalization:
//
//   f^(xi) = p^{-d} sum_x f(x) e_p(-xi . x),   f(x) = sum_xi f^(xi) e_p(xi . x).
//
// One-dimensional transforms run either through a direct O(p^2) sum (the
// reference path) or through Rader's reindexing onto a power-of-two cyclic
// convolution. Multidimensional transforms apply the 1-d transform along
// each axis in turn.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wiener/config.hpp"
#include "wiener/zpd.hpp"

namespace wiener {

using Complex = std::complex<double>;

class SparseFunction {
 public:
  explicit SparseFunction(GroupContext ctx) : ctx_(ctx) {}

  static SparseFunction indicator(const GroupContext& ctx, std::span<const ZpVector> set);

  const GroupContext& ctx() const noexcept { return ctx_; }
  const std::map<ZpVector, Complex>& entries() const noexcept { return entries_; }

  // Stores v at x; an exact zero removes the entry.
  void set(const ZpVector& x, Complex v);
  Complex operator()(const ZpVector& x) const;

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  std::vector<ZpVector> support() const;
  double max_abs() const;
  double l2norm() const;
  // |supp f| / p^d
  double density() const;

  // Pointwise product on the same group.
  SparseFunction times(const SparseFunction& g) const;
  // x -> f(t(x)).
  SparseFunction pullback(const AffineMap& t) const;
  // Restriction of f to the subset, entries off the subset dropped.
  SparseFunction restricted_to(std::span<const ZpVector> subset) const;

  std::vector<Complex> to_dense(const Config& cfg = {}) const;
  // Drops values with |v| < clamp.
  static SparseFunction from_dense(const GroupContext& ctx, std::span<const Complex> table,
                                   double clamp);

  friend bool operator==(const SparseFunction&, const SparseFunction&) = default;

 private:
  GroupContext ctx_;
  std::map<ZpVector, Complex> entries_;
};

struct Spectrum {
  GroupContext ctx;
  // Indexed by GroupContext::index(xi).
  std::vector<Complex> coefficients;

  Complex at(const ZpVector& xi) const { return coefficients.at(ctx.index(xi)); }
  // sum |f^(xi)| accumulated in index order.
  double l1() const;
};

enum class TransformPath { automatic, naive, fast };

// Unnormalized transforms of a length-p table: X[k] = sum_n x[n] e_p(-k n).
std::vector<Complex> dft_prime_naive(std::span<const Complex> values);
std::vector<Complex> dft_prime_fast(std::span<const Complex> values);

// Reusable Rader plan for a fixed prime length.
class PrimeDft {
 public:
  explicit PrimeDft(std::int64_t p);

  std::int64_t length() const noexcept { return p_; }
  std::int64_t primitive_root() const noexcept { return g_; }
  std::size_t convolution_length() const noexcept { return m_; }
  // In-place unnormalized forward transform.
  void forward(std::span<Complex> data) const;

 private:
  std::int64_t p_;
  std::int64_t g_;
  std::size_t m_;
  std::vector<std::int64_t> gpow_;      // g^m mod p
  std::vector<std::int64_t> ginv_pow_;  // g^{-q} mod p
  std::vector<Complex> kernel_fft_;
  std::vector<Complex> fft_twiddles_;
};

std::int64_t find_primitive_root(std::int64_t p);

// Forward transforms with the 1/p^d normalization.
Spectrum dft(const SparseFunction& f, const Config& cfg = {},
             TransformPath path = TransformPath::automatic);
Spectrum dft_multidim(const SparseFunction& f, const Config& cfg = {},
                      TransformPath path = TransformPath::automatic);

SparseFunction inverse_dft(const Spectrum& spectrum, const Config& cfg = {},
                           TransformPath path = TransformPath::automatic);

double wiener_norm(const SparseFunction& f, const Config& cfg = {},
                   TransformPath path = TransformPath::automatic);

// ||a - b||_2 / max(||b||_2, 1e-300)
double relative_l2_error(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace wiener
