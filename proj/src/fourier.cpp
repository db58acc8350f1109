#include "wiener/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "wiener/errors.hpp"

namespace wiener {

// ---------------------------------------------------------------------------
// SparseFunction

SparseFunction SparseFunction::indicator(const GroupContext& ctx, std::span<const ZpVector> set) {
  SparseFunction f(ctx);
  for (const auto& x : set) f.set(x, 1.0);
  return f;
}

void SparseFunction::set(const ZpVector& x, Complex v) {
  ctx_.check(x);
  if (v == Complex{0.0, 0.0})
    entries_.erase(x);
  else
    entries_[x] = v;
}

Complex SparseFunction::operator()(const ZpVector& x) const {
  auto it = entries_.find(x);
  return it == entries_.end() ? Complex{} : it->second;
}

std::vector<ZpVector> SparseFunction::support() const {
  std::vector<ZpVector> out;
  out.reserve(entries_.size());
  for (const auto& [x, v] : entries_) out.push_back(x);
  return out;
}

double SparseFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [x, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

double SparseFunction::l2norm() const {
  double s = 0.0;
  for (const auto& [x, v] : entries_) s += std::norm(v);
  return std::sqrt(s);
}

double SparseFunction::density() const {
  return static_cast<double>(entries_.size()) / static_cast<double>(ctx_.order());
}

SparseFunction SparseFunction::times(const SparseFunction& g) const {
  if (!(ctx_ == g.ctx_)) throw InvalidArgument("pointwise product across different groups");
  SparseFunction h(ctx_);
  for (const auto& [x, v] : entries_) {
    const Complex w = g(x);
    if (w != Complex{}) h.set(x, v * w);
  }
  return h;
}

SparseFunction SparseFunction::pullback(const AffineMap& t) const {
  if (!(t.ctx == ctx_)) throw InvalidArgument("affine map lives on a different group");
  // (f o t)(y) = f(t y), so the support is t^{-1}(supp f).
  const AffineMap inv = invert_affine(t);
  SparseFunction h(ctx_);
  for (const auto& [x, v] : entries_) h.set(apply_affine(inv, x), v);
  return h;
}

SparseFunction SparseFunction::restricted_to(std::span<const ZpVector> subset) const {
  SparseFunction h(ctx_);
  for (const auto& x : subset) {
    const Complex v = (*this)(x);
    if (v != Complex{}) h.set(x, v);
  }
  return h;
}

std::vector<Complex> SparseFunction::to_dense(const Config& cfg) const {
  ctx_.require_dense(cfg.dense_budget);
  std::vector<Complex> table(ctx_.order());
  for (const auto& [x, v] : entries_) table[ctx_.index(x)] = v;
  return table;
}

SparseFunction SparseFunction::from_dense(const GroupContext& ctx, std::span<const Complex> table,
                                          double clamp) {
  if (table.size() != ctx.order()) throw InvalidArgument("dense table size mismatch");
  SparseFunction f(ctx);
  for (std::size_t i = 0; i < table.size(); ++i)
    if (std::abs(table[i]) >= clamp && table[i] != Complex{}) f.set(ctx.from_index(i), table[i]);
  return f;
}

double Spectrum::l1() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::abs(c);
  return s;
}

// ---------------------------------------------------------------------------
// One-dimensional transforms

namespace {

std::vector<Complex> unit_roots(std::size_t n, std::size_t count) {
  std::vector<Complex> w(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

// In-place iterative radix-2 transform; twiddles holds e^{-2 pi i k/n} for
// k < n/2. inverse conjugates the twiddles (no scaling).
void fft_pow2(std::span<Complex> a, std::span<const Complex> twiddles, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        Complex w = twiddles[k * stride];
        if (inverse) w = std::conj(w);
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
  }
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= n / q; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

void naive_forward(std::span<Complex> data, std::span<const Complex> roots) {
  const std::size_t p = data.size();
  std::vector<Complex> out(p);
  for (std::size_t k = 0; k < p; ++k) {
    Complex acc{};
    std::size_t j = 0;
    for (std::size_t n = 0; n < p; ++n) {
      acc += data[n] * roots[j];
      j += k;
      if (j >= p) j -= p;
    }
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), data.begin());
}

}  // namespace

std::int64_t find_primitive_root(std::int64_t p) {
  if (p == 2) return 1;
  const GroupContext ctx(p, 1);
  const auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (ctx.pow(g, static_cast<std::uint64_t>((p - 1) / q)) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InvalidArgument("no primitive root mod " + std::to_string(p));
}

PrimeDft::PrimeDft(std::int64_t p) : p_(p) {
  const GroupContext ctx(p, 1);
  g_ = find_primitive_root(p);
  const auto n = static_cast<std::size_t>(p - 1);
  m_ = std::bit_ceil(2 * n - 1);
  gpow_.resize(n);
  ginv_pow_.resize(n);
  const std::int64_t ginv = ctx.inverse(g_);
  std::int64_t a = 1, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    gpow_[i] = a;
    ginv_pow_[i] = b;
    a = ctx.mul(a, g_);
    b = ctx.mul(b, ginv);
  }
  fft_twiddles_ = unit_roots(m_, m_ / 2);
  kernel_fft_.assign(m_, Complex{});
  for (std::size_t j = 0; j < n; ++j) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(ginv_pow_[j]) / static_cast<double>(p);
    kernel_fft_[j] = {std::cos(angle), std::sin(angle)};
  }
  fft_pow2(kernel_fft_, fft_twiddles_, false);
}

void PrimeDft::forward(std::span<Complex> data) const {
  if (data.size() != static_cast<std::size_t>(p_)) throw InvalidArgument("length mismatch");
  const std::size_t n = static_cast<std::size_t>(p_ - 1);
  const Complex x0 = data[0];
  Complex total = x0;
  std::vector<Complex> work(m_, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    work[i] = data[static_cast<std::size_t>(gpow_[i])];
    total += work[i];
  }
  fft_pow2(work, fft_twiddles_, false);
  for (std::size_t i = 0; i < m_; ++i) work[i] *= kernel_fft_[i];
  fft_pow2(work, fft_twiddles_, true);
  const double scale = 1.0 / static_cast<double>(m_);
  data[0] = total;
  for (std::size_t q = 0; q < n; ++q) {
    // Fold the linear convolution back onto the cyclic one of length n.
    Complex c = work[q];
    if (q + n < 2 * n - 1) c += work[q + n];
    data[static_cast<std::size_t>(ginv_pow_[q])] = x0 + c * scale;
  }
}

std::vector<Complex> dft_prime_naive(std::span<const Complex> values) {
  std::vector<Complex> out(values.begin(), values.end());
  const auto roots = unit_roots(values.size(), values.size());
  naive_forward(out, roots);
  return out;
}

std::vector<Complex> dft_prime_fast(std::span<const Complex> values) {
  if (!is_prime(static_cast<std::int64_t>(values.size())) || values.size() < 3)
    throw InvalidArgument("dft_prime_fast requires an odd prime length");
  std::vector<Complex> out(values.begin(), values.end());
  PrimeDft(static_cast<std::int64_t>(values.size())).forward(out);
  return out;
}

double relative_l2_error(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("length mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

// ---------------------------------------------------------------------------
// Multidimensional transforms

namespace {

// Applies the unnormalized 1-d forward transform along every axis.
void transform_axes(std::vector<Complex>& table, const GroupContext& ctx, const Config& cfg,
                    TransformPath path) {
  const auto p = static_cast<std::size_t>(ctx.p());
  const bool fast = path == TransformPath::fast ||
                    (path == TransformPath::automatic && p > cfg.fast_threshold);
  std::vector<Complex> roots;
  std::optional<PrimeDft> plan;
  if (fast)
    plan.emplace(ctx.p());
  else
    roots = unit_roots(p, p);

  std::vector<Complex> line(p);
  const std::size_t total = table.size();
  std::size_t stride = 1;
  for (int axis = ctx.d() - 1; axis >= 0; --axis) {
    const std::size_t block = stride * p;
    for (std::size_t start = 0; start < total; start += block)
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::size_t k = 0; k < p; ++k) line[k] = table[start + off + k * stride];
        if (fast)
          plan->forward(line);
        else
          naive_forward(line, roots);
        for (std::size_t k = 0; k < p; ++k) table[start + off + k * stride] = line[k];
      }
    stride = block;
  }
}

}  // namespace

Spectrum dft_multidim(const SparseFunction& f, const Config& cfg, TransformPath path) {
  const auto& ctx = f.ctx();
  std::vector<Complex> table = f.to_dense(cfg);
  transform_axes(table, ctx, cfg, path);
  const double scale = 1.0 / static_cast<double>(ctx.order());
  for (auto& c : table) c *= scale;
  return Spectrum{ctx, std::move(table)};
}

Spectrum dft(const SparseFunction& f, const Config& cfg, TransformPath path) {
  return dft_multidim(f, cfg, path);
}

SparseFunction inverse_dft(const Spectrum& spectrum, const Config& cfg, TransformPath path) {
  const auto& ctx = spectrum.ctx;
  ctx.require_dense(cfg.dense_budget);
  if (spectrum.coefficients.size() != ctx.order())
    throw InvalidArgument("spectrum size does not match its group");
  // sum_xi F(xi) e(xi x) = conj( sum_xi conj F(xi) e(-xi x) )
  std::vector<Complex> table(spectrum.coefficients.size());
  std::transform(spectrum.coefficients.begin(), spectrum.coefficients.end(), table.begin(),
                 [](Complex c) { return std::conj(c); });
  transform_axes(table, ctx, cfg, path);
  for (auto& c : table) c = std::conj(c);
  return SparseFunction::from_dense(ctx, table, cfg.zero_clamp);
}

double wiener_norm(const SparseFunction& f, const Config& cfg, TransformPath path) {
  f.ctx().require_dense(cfg.dense_budget);
  if (f.empty()) return 0.0;
  return dft(f, cfg, path).l1();
}

}  // namespace wiener
