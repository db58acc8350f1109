#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wiener/errors.hpp"
#include "wiener/fourier.hpp"

using namespace wiener;
using doctest::Approx;

namespace {

std::vector<ZpVector> pts(std::initializer_list<ZpVector> l) { return l; }

}  // namespace

TEST_CASE("delta and constant spectra") {
  const GroupContext ctx(3, 1);
  const auto delta = dft(SparseFunction::indicator(ctx, pts({{0}})));
  for (auto c : delta.coefficients) CHECK(std::abs(c - Complex(1.0 / 3)) < 1e-15);

  const auto one = dft(SparseFunction::indicator(ctx, pts({{0}, {1}, {2}})));
  CHECK(std::abs(one.coefficients[0] - Complex(1)) < 1e-15);
  CHECK(std::abs(one.coefficients[1]) < 1e-15);
  CHECK(std::abs(one.coefficients[2]) < 1e-15);

  const GroupContext c32(3, 2);
  const auto d2 = dft(SparseFunction::indicator(c32, pts({{0, 0}})));
  CHECK(d2.coefficients.size() == 9);
  for (auto c : d2.coefficients) CHECK(std::abs(c - Complex(1.0 / 9)) < 1e-15);
}

TEST_CASE("two-point indicator on Z_5 has a cosine spectrum") {
  const GroupContext ctx(5, 1);
  const auto f = SparseFunction::indicator(ctx, pts({{0}, {1}}));
  const auto s = dft(f);
  for (int xi = 0; xi < 5; ++xi)
    CHECK(std::abs(s.coefficients[static_cast<std::size_t>(xi)]) ==
          Approx(0.4 * std::abs(std::cos(std::numbers::pi * xi / 5))).epsilon(1e-13));
  const double closed =
      0.4 * (1 + 2 * std::cos(std::numbers::pi / 5) + 2 * std::cos(2 * std::numbers::pi / 5));
  CHECK(wiener_norm(f) == Approx(closed).epsilon(1e-13));
  CHECK(wiener_norm(f) == Approx(1.2944271909999159).epsilon(1e-13));
}

TEST_CASE("subgroups have norm one") {
  const GroupContext c5(5, 1);
  CHECK(wiener_norm(SparseFunction::indicator(c5, pts({{0}, {1}, {2}, {3}, {4}}))) ==
        Approx(1.0).epsilon(1e-13));
  const GroupContext c32(3, 2);
  CHECK(wiener_norm(SparseFunction::indicator(c32, pts({{0, 0}, {1, 1}, {2, 2}}))) ==
        Approx(1.0).epsilon(1e-13));
  const GroupContext c72(7, 2);
  std::vector<ZpVector> line;
  for (int t = 0; t < 7; ++t) line.push_back(ZpVector{t, (3 * t) % 7});
  CHECK(wiener_norm(SparseFunction::indicator(c72, line)) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("transform agrees with the direct double sum") {
  Rng rng(3);
  for (auto [p, d] : {std::pair{3, 1}, {7, 1}, {101, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    const GroupContext ctx(p, d);
    for (int t = 0; t < 5; ++t) {
      const auto f = helpers::random_function(rng, ctx, std::min<std::uint64_t>(6, ctx.order()));
      const auto want = oracle::direct_dft(f);
      for (auto path : {TransformPath::naive, TransformPath::fast, TransformPath::automatic}) {
        const auto got = dft(f, {}, path);
        CHECK(relative_l2_error(got.coefficients, want) < 1e-12);
      }
      CHECK(wiener_norm(f) == Approx(oracle::direct_wiener_norm(f)).epsilon(1e-12));
    }
  }
}

TEST_CASE("product functions have product spectra") {
  Rng rng(8);
  const GroupContext c1(5, 1), c2(5, 2);
  const auto g = helpers::random_function(rng, c1, 3);
  const auto h = helpers::random_function(rng, c1, 4);
  SparseFunction f(c2);
  for (const auto& [x, a] : g.entries())
    for (const auto& [y, b] : h.entries()) f.set(ZpVector{x[0], y[0]}, a * b);
  const auto sg = dft(g), sh = dft(h), sf = dft(f);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(sf.at(ZpVector{i, j}) - sg.coefficients[i] * sh.coefficients[j]) < 1e-14);
}

TEST_CASE("round trip through the inverse transform") {
  const GroupContext c3(3, 1);
  const auto delta = SparseFunction::indicator(c3, pts({{0}}));
  CHECK(inverse_dft(dft(delta)) == delta);
  CHECK(inverse_dft(Spectrum{c3, std::vector<Complex>(3)}).empty());

  Rng rng(21);
  const GroupContext c101(101, 1);
  for (auto path : {TransformPath::naive, TransformPath::fast}) {
    const auto f = helpers::random_function(rng, c101, 10);
    const auto back = inverse_dft(dft(f, {}, path), {}, path);
    CHECK(back.support() == f.support());
    for (const auto& [x, v] : f.entries()) CHECK(std::abs(back(x) - v) < 1e-9);
  }
}

TEST_CASE("Parseval, inversion bound and the Cauchy-Schwarz upper bound") {
  Rng rng(4);
  for (auto [p, d] : {std::pair{5, 1}, {11, 1}, {101, 1}, {5, 2}, {3, 3}}) {
    const GroupContext ctx(p, d);
    for (int t = 0; t < 20; ++t) {
      const auto f = helpers::random_function(rng, ctx, 1 + rng.below(std::min<std::uint64_t>(12, ctx.order())));
      const auto s = dft(f);
      double energy = 0;
      for (auto c : s.coefficients) energy += std::norm(c);
      const double l2 = f.l2norm();
      CHECK(energy == Approx(l2 * l2 / static_cast<double>(ctx.order())).epsilon(1e-9));
      const double w = s.l1();
      CHECK(w >= f.max_abs() - 1e-9);
      CHECK(w <= l2 + 1e-9);
    }
  }
}

TEST_CASE("Banach algebra property on random pairs") {
  Rng rng(6);
  for (auto [p, d] : {std::pair{7, 1}, {13, 1}, {5, 2}}) {
    const GroupContext ctx(p, d);
    for (int t = 0; t < 20; ++t) {
      const auto f = helpers::random_function(rng, ctx, 1 + rng.below(ctx.order()));
      const auto g = helpers::random_function(rng, ctx, 1 + rng.below(ctx.order()));
      CHECK(wiener_norm(f.times(g)) <= wiener_norm(f) * wiener_norm(g) + 1e-9);
    }
  }
}

TEST_CASE("affine invariance of the norm") {
  Rng rng(9);
  const GroupContext ctx(5, 2);
  for (int t = 0; t < 30; ++t) {
    ResidueMatrix m(2);
    for (auto& a : m.a) a = rng.between(0, 4);
    AffineMap map{ctx, m, ZpVector{rng.between(0, 4), rng.between(0, 4)}};
    if (!map.is_invertible()) continue;
    const auto f = helpers::random_function(rng, ctx, 1 + rng.below(25));
    CHECK(wiener_norm(f.pullback(map)) == Approx(wiener_norm(f)).epsilon(1e-9));
  }
}

TEST_CASE("fast prime path matches the naive path on the prime ladder") {
  Rng rng(12);
  for (std::int64_t p : {3, 5, 7, 11, 101, 1009, 10007}) {
    const auto x = helpers::random_table(rng, static_cast<std::size_t>(p));
    CHECK(relative_l2_error(dft_prime_fast(x), dft_prime_naive(x)) < 1e-9);
  }
  // Delta at zero gives a constant.
  std::vector<Complex> delta(5);
  delta[0] = 1;
  for (auto c : dft_prime_fast(delta)) CHECK(std::abs(c - Complex(1)) < 1e-14);
}

TEST_CASE("Rader plan details") {
  CHECK(find_primitive_root(7) == 3);
  CHECK(find_primitive_root(101) == 2);
  const PrimeDft plan(101);
  CHECK(plan.convolution_length() == 256);  // bit_ceil(2*100 - 1)
  std::vector<Complex> v(101, Complex(1));
  plan.forward(v);
  CHECK(std::abs(v[0] - Complex(101)) < 1e-10);
  for (int k = 1; k < 101; ++k) CHECK(std::abs(v[static_cast<std::size_t>(k)]) < 1e-10);
}

TEST_CASE("empty function and budgets") {
  const GroupContext ctx(5, 1);
  CHECK(wiener_norm(SparseFunction(ctx)) == 0.0);
  Config tight;
  tight.dense_budget = 100;
  CHECK_THROWS_AS(dft(SparseFunction::indicator(GroupContext(11, 2), pts({{0, 0}})), tight),
                  BudgetError);
}

TEST_CASE("sparse function container") {
  const GroupContext ctx(5, 1);
  SparseFunction f(ctx);
  f.set(ZpVector{2}, Complex(3, 4));
  CHECK(f.support_size() == 1);
  CHECK(f.max_abs() == 5.0);
  f.set(ZpVector{2}, Complex{});
  CHECK(f.empty());
  CHECK_THROWS_AS(f.set(ZpVector{5}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(f.set(ZpVector{1, 1}, 1.0), InvalidArgument);
}
