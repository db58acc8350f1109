#pragma once

// Arithmetic over Z_p^d: residues, vectors, projective directions, affine
// maps, lines and hyperplanes.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "wiener/config.hpp"

namespace wiener {

using Residue = std::int64_t;

// Element of Z_p^d. Coordinates are always reduced to [0, p); the context
// that produced a vector is responsible for that.
struct ZpVector {
  std::vector<Residue> coords;

  ZpVector() = default;
  explicit ZpVector(std::vector<Residue> c) : coords(std::move(c)) {}
  ZpVector(std::initializer_list<Residue> c) : coords(c) {}

  std::size_t size() const noexcept { return coords.size(); }
  Residue operator[](std::size_t i) const { return coords[i]; }
  Residue& operator[](std::size_t i) { return coords[i]; }
  bool is_zero() const noexcept;

  friend auto operator<=>(const ZpVector&, const ZpVector&) = default;
  friend bool operator==(const ZpVector&, const ZpVector&) = default;
};

class GroupContext {
 public:
  // Throws InvalidArgument unless p is an odd prime and d >= 1.
  GroupContext(std::int64_t p, int d);

  std::int64_t p() const noexcept { return p_; }
  int d() const noexcept { return d_; }

  // |G| = p^d; throws BudgetError when it does not fit in 63 bits.
  std::uint64_t order() const;
  // Throws BudgetError unless p^d <= budget.
  void require_dense(std::uint64_t budget) const;

  Residue reduce(std::int64_t x) const noexcept;
  Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
  Residue sub(Residue a, Residue b) const noexcept { return reduce(a - b); }
  Residue mul(Residue a, Residue b) const noexcept;
  Residue pow(Residue a, std::uint64_t e) const noexcept;
  // Throws SingularMapError for a == 0.
  Residue inverse(Residue a) const;

  // Builds a vector from arbitrary integers, reducing each coordinate.
  ZpVector vec(std::span<const std::int64_t> coords) const;
  ZpVector vec(std::initializer_list<std::int64_t> coords) const;
  ZpVector zero() const { return ZpVector(std::vector<Residue>(d_, 0)); }
  ZpVector basis(int i) const;
  // Throws InvalidArgument when x has the wrong length or unreduced entries.
  void check(const ZpVector& x) const;

  ZpVector add(const ZpVector& a, const ZpVector& b) const;
  ZpVector sub(const ZpVector& a, const ZpVector& b) const;
  ZpVector neg(const ZpVector& a) const;
  ZpVector scale(Residue c, const ZpVector& a) const;
  Residue dot(const ZpVector& a, const ZpVector& b) const;

  // Row-major index with the first coordinate most significant, so index
  // order coincides with lexicographic order.
  std::uint64_t index(const ZpVector& x) const;
  ZpVector from_index(std::uint64_t idx) const;

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  std::int64_t p_;
  int d_;
};

bool is_prime(std::int64_t n) noexcept;

// min |z| over integers z = x (mod p).
std::int64_t canonical_abs(Residue x, const GroupContext& ctx);
// Representative of x in (-p/2, p/2].
std::int64_t signed_rep(Residue x, const GroupContext& ctx);

// One representative per one-dimensional subspace, normalized so the first
// nonzero coordinate is 1, in lexicographic order.
std::vector<ZpVector> enumerate_directions(const GroupContext& ctx,
                                           const Config& cfg = {});

// Normalizes a nonzero vector so its first nonzero coordinate is 1.
ZpVector projective_normal_form(const ZpVector& v, const GroupContext& ctx);

// Square matrix over Z_p, row-major.
struct ResidueMatrix {
  int n = 0;
  std::vector<Residue> a;

  ResidueMatrix() = default;
  explicit ResidueMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0) {}
  static ResidueMatrix identity(int size);

  Residue& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  Residue operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;
};

Residue determinant(const ResidueMatrix& m, const GroupContext& ctx);

// x -> matrix * x + shift over Z_p^d.
struct AffineMap {
  GroupContext ctx;
  ResidueMatrix matrix;
  ZpVector shift;

  static AffineMap identity(const GroupContext& ctx);
  static AffineMap linear(const GroupContext& ctx, ResidueMatrix m);
  bool is_invertible() const;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

ZpVector apply_affine(const AffineMap& t, const ZpVector& x);
// Throws SingularMapError when det(matrix) = 0 mod p.
AffineMap invert_affine(const AffineMap& t);
// Composition (outer after inner).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

// {x : x . eta = u}
struct Hyperplane {
  ZpVector eta;
  Residue u = 0;

  bool contains(const ZpVector& x, const GroupContext& ctx) const;
  // Exhaustive listing; cost p^d.
  std::vector<ZpVector> points(const GroupContext& ctx) const;
  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

// {u * direction + base : u in Z_p}
struct Line {
  ZpVector base;
  ZpVector direction;

  ZpVector at(Residue u, const GroupContext& ctx) const;
  bool contains(const ZpVector& x, const GroupContext& ctx) const;
  std::vector<ZpVector> points(const GroupContext& ctx) const;
  friend bool operator==(const Line&, const Line&) = default;
};

// Throws InvalidArgument for a zero normal / direction or a bad dimension.
void validate(const Hyperplane& h, const GroupContext& ctx);
void validate(const Line& l, const GroupContext& ctx);

}  // namespace wiener
