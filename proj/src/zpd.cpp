#include "wiener/zpd.hpp"

#include <string>
#include <utility>

#include "wiener/errors.hpp"

namespace wiener {

bool ZpVector::is_zero() const noexcept {
  for (Residue c : coords)
    if (c != 0) return false;
  return true;
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t q = 3; q <= n / q; q += 2)
    if (n % q == 0) return false;
  return true;
}

GroupContext::GroupContext(std::int64_t p, int d) : p_(p), d_(d) {
  if (p < 3 || !is_prime(p))
    throw InvalidArgument("modulus must be an odd prime, got " + std::to_string(p));
  if (d < 1) throw InvalidArgument("dimension must be >= 1, got " + std::to_string(d));
}

std::uint64_t GroupContext::order() const {
  std::uint64_t n = 1;
  const auto p = static_cast<std::uint64_t>(p_);
  for (int i = 0; i < d_; ++i) {
    if (n > (std::uint64_t{1} << 62) / p)
      throw BudgetError("p^d overflows: p=" + std::to_string(p_) + " d=" + std::to_string(d_));
    n *= p;
  }
  return n;
}

void GroupContext::require_dense(std::uint64_t budget) const {
  const std::uint64_t n = order();
  if (n > budget)
    throw BudgetError("p^d = " + std::to_string(n) + " exceeds dense budget " +
                      std::to_string(budget));
}

Residue GroupContext::reduce(std::int64_t x) const noexcept {
  x %= p_;
  return x < 0 ? x + p_ : x;
}

Residue GroupContext::mul(Residue a, Residue b) const noexcept {
  return static_cast<Residue>((static_cast<__int128>(a) * b) % p_);
}

Residue GroupContext::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1, base = reduce(a);
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue GroupContext::inverse(Residue a) const {
  a = reduce(a);
  if (a == 0) throw SingularMapError("zero has no inverse mod " + std::to_string(p_));
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

ZpVector GroupContext::vec(std::span<const std::int64_t> coords) const {
  if (static_cast<int>(coords.size()) != d_)
    throw InvalidArgument("vector has " + std::to_string(coords.size()) +
                          " coordinates, expected " + std::to_string(d_));
  ZpVector v;
  v.coords.reserve(coords.size());
  for (auto c : coords) v.coords.push_back(reduce(c));
  return v;
}

ZpVector GroupContext::vec(std::initializer_list<std::int64_t> coords) const {
  return vec(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

ZpVector GroupContext::basis(int i) const {
  if (i < 0 || i >= d_) throw InvalidArgument("basis index out of range");
  ZpVector v = zero();
  v[i] = 1;
  return v;
}

void GroupContext::check(const ZpVector& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw InvalidArgument("vector has " + std::to_string(x.size()) + " coordinates, expected " +
                          std::to_string(d_));
  for (Residue c : x.coords)
    if (c < 0 || c >= p_)
      throw InvalidArgument("coordinate " + std::to_string(c) + " not reduced mod " +
                            std::to_string(p_));
}

ZpVector GroupContext::add(const ZpVector& a, const ZpVector& b) const {
  ZpVector r = a;
  for (int i = 0; i < d_; ++i) r[i] = add(a[i], b[i]);
  return r;
}

ZpVector GroupContext::sub(const ZpVector& a, const ZpVector& b) const {
  ZpVector r = a;
  for (int i = 0; i < d_; ++i) r[i] = sub(a[i], b[i]);
  return r;
}

ZpVector GroupContext::neg(const ZpVector& a) const {
  ZpVector r = a;
  for (int i = 0; i < d_; ++i) r[i] = reduce(-a[i]);
  return r;
}

ZpVector GroupContext::scale(Residue c, const ZpVector& a) const {
  ZpVector r = a;
  for (int i = 0; i < d_; ++i) r[i] = mul(reduce(c), a[i]);
  return r;
}

Residue GroupContext::dot(const ZpVector& a, const ZpVector& b) const {
  __int128 acc = 0;
  for (int i = 0; i < d_; ++i) acc += static_cast<__int128>(a[i]) * b[i];
  return static_cast<Residue>(acc % p_);
}

std::uint64_t GroupContext::index(const ZpVector& x) const {
  std::uint64_t idx = 0;
  for (int i = 0; i < d_; ++i) idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(x[i]);
  return idx;
}

ZpVector GroupContext::from_index(std::uint64_t idx) const {
  ZpVector v = zero();
  for (int i = d_ - 1; i >= 0; --i) {
    v[i] = static_cast<Residue>(idx % static_cast<std::uint64_t>(p_));
    idx /= static_cast<std::uint64_t>(p_);
  }
  return v;
}

std::int64_t canonical_abs(Residue x, const GroupContext& ctx) {
  const Residue r = ctx.reduce(x);
  return r <= ctx.p() - r ? r : ctx.p() - r;
}

std::int64_t signed_rep(Residue x, const GroupContext& ctx) {
  const Residue r = ctx.reduce(x);
  return 2 * r > ctx.p() ? r - ctx.p() : r;
}

std::vector<ZpVector> enumerate_directions(const GroupContext& ctx, const Config& cfg) {
  const std::uint64_t r = (ctx.order() - 1) / static_cast<std::uint64_t>(ctx.p() - 1);
  if (r > cfg.enumeration_cap)
    throw BudgetError("direction count " + std::to_string(r) + " exceeds enumeration cap " +
                      std::to_string(cfg.enumeration_cap));
  std::vector<ZpVector> out;
  out.reserve(r);
  const int d = ctx.d();
  // More leading zeros sort first, so the pivot moves from the last
  // coordinate to the first.
  for (int pivot = d - 1; pivot >= 0; --pivot) {
    ZpVector v = ctx.zero();
    v[pivot] = 1;
    const int free = d - 1 - pivot;
    std::uint64_t count = 1;
    for (int i = 0; i < free; ++i) count *= static_cast<std::uint64_t>(ctx.p());
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t rem = t;
      for (int i = d - 1; i > pivot; --i) {
        v[i] = static_cast<Residue>(rem % static_cast<std::uint64_t>(ctx.p()));
        rem /= static_cast<std::uint64_t>(ctx.p());
      }
      out.push_back(v);
    }
  }
  return out;
}

ZpVector projective_normal_form(const ZpVector& v, const GroupContext& ctx) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return ctx.scale(ctx.inverse(v[i]), v);
  throw InvalidArgument("zero vector has no direction");
}

ResidueMatrix ResidueMatrix::identity(int size) {
  ResidueMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

Residue determinant(const ResidueMatrix& m, const GroupContext& ctx) {
  ResidueMatrix a = m;
  const int n = a.n;
  Residue det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a(row, col) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = ctx.reduce(-det);
    }
    det = ctx.mul(det, a(col, col));
    const Residue inv = ctx.inverse(a(col, col));
    for (int row = col + 1; row < n; ++row) {
      const Residue factor = ctx.mul(a(row, col), inv);
      if (factor == 0) continue;
      for (int j = col; j < n; ++j) a(row, j) = ctx.sub(a(row, j), ctx.mul(factor, a(col, j)));
    }
  }
  return det;
}

namespace {

ResidueMatrix invert_matrix(const ResidueMatrix& m, const GroupContext& ctx) {
  const int n = m.n;
  ResidueMatrix a = m;
  ResidueMatrix inv = ResidueMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a(row, col) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw SingularMapError("matrix is singular mod " + std::to_string(ctx.p()));
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Residue s = ctx.inverse(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = ctx.mul(a(col, j), s);
      inv(col, j) = ctx.mul(inv(col, j), s);
    }
    for (int row = 0; row < n; ++row) {
      if (row == col || a(row, col) == 0) continue;
      const Residue factor = a(row, col);
      for (int j = 0; j < n; ++j) {
        a(row, j) = ctx.sub(a(row, j), ctx.mul(factor, a(col, j)));
        inv(row, j) = ctx.sub(inv(row, j), ctx.mul(factor, inv(col, j)));
      }
    }
  }
  return inv;
}

ZpVector mat_vec(const ResidueMatrix& m, const ZpVector& x, const GroupContext& ctx) {
  ZpVector r = ctx.zero();
  for (int i = 0; i < m.n; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < m.n; ++j) acc += static_cast<__int128>(m(i, j)) * x[j];
    r[i] = static_cast<Residue>(acc % ctx.p());
  }
  return r;
}

}  // namespace

AffineMap AffineMap::identity(const GroupContext& ctx) {
  return AffineMap{ctx, ResidueMatrix::identity(ctx.d()), ctx.zero()};
}

AffineMap AffineMap::linear(const GroupContext& ctx, ResidueMatrix m) {
  if (m.n != ctx.d()) throw InvalidArgument("matrix size does not match dimension");
  for (auto& e : m.a) e = ctx.reduce(e);
  return AffineMap{ctx, std::move(m), ctx.zero()};
}

bool AffineMap::is_invertible() const { return determinant(matrix, ctx) != 0; }

ZpVector apply_affine(const AffineMap& t, const ZpVector& x) {
  t.ctx.check(x);
  return t.ctx.add(mat_vec(t.matrix, x, t.ctx), t.shift);
}

AffineMap invert_affine(const AffineMap& t) {
  if (determinant(t.matrix, t.ctx) == 0)
    throw SingularMapError("affine map has determinant 0 mod " + std::to_string(t.ctx.p()));
  ResidueMatrix inv = invert_matrix(t.matrix, t.ctx);
  ZpVector shift = t.ctx.neg(mat_vec(inv, t.shift, t.ctx));
  return AffineMap{t.ctx, std::move(inv), std::move(shift)};
}

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  const auto& ctx = outer.ctx;
  const int n = ctx.d();
  ResidueMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < n; ++k) acc += static_cast<__int128>(outer.matrix(i, k)) * inner.matrix(k, j);
      m(i, j) = static_cast<Residue>(acc % ctx.p());
    }
  ZpVector shift = ctx.add(mat_vec(outer.matrix, inner.shift, ctx), outer.shift);
  return AffineMap{ctx, std::move(m), std::move(shift)};
}

void validate(const Hyperplane& h, const GroupContext& ctx) {
  ctx.check(h.eta);
  if (h.eta.is_zero()) throw InvalidArgument("hyperplane normal must be nonzero");
  if (h.u < 0 || h.u >= ctx.p()) throw InvalidArgument("hyperplane offset not reduced");
}

void validate(const Line& l, const GroupContext& ctx) {
  ctx.check(l.base);
  ctx.check(l.direction);
  if (l.direction.is_zero()) throw InvalidArgument("line direction must be nonzero");
}

bool Hyperplane::contains(const ZpVector& x, const GroupContext& ctx) const {
  return ctx.dot(x, eta) == u;
}

std::vector<ZpVector> Hyperplane::points(const GroupContext& ctx) const {
  std::vector<ZpVector> out;
  const std::uint64_t n = ctx.order();
  for (std::uint64_t i = 0; i < n; ++i) {
    ZpVector x = ctx.from_index(i);
    if (contains(x, ctx)) out.push_back(std::move(x));
  }
  return out;
}

ZpVector Line::at(Residue u, const GroupContext& ctx) const {
  return ctx.add(ctx.scale(u, direction), base);
}

bool Line::contains(const ZpVector& x, const GroupContext& ctx) const {
  // x - base must be a multiple of the direction.
  const ZpVector diff = ctx.sub(x, base);
  std::size_t pivot = 0;
  while (pivot < direction.size() && direction[pivot] == 0) ++pivot;
  const Residue u = ctx.mul(diff[pivot], ctx.inverse(direction[pivot]));
  return ctx.scale(u, direction) == diff;
}

std::vector<ZpVector> Line::points(const GroupContext& ctx) const {
  std::vector<ZpVector> out;
  out.reserve(static_cast<std::size_t>(ctx.p()));
  for (Residue u = 0; u < ctx.p(); ++u) out.push_back(at(u, ctx));
  return out;
}

}  // namespace wiener
