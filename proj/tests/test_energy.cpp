#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wiener/energy.hpp"
#include "wiener/errors.hpp"

using namespace wiener;
using doctest::Approx;

namespace {

std::vector<ZpVector> ones(std::initializer_list<std::int64_t> xs) {
  std::vector<ZpVector> out;
  for (auto x : xs) out.push_back(ZpVector{x});
  return out;
}

}  // namespace

TEST_CASE("T_k on small examples") {
  const GroupContext ctx(5, 1);
  const auto delta = SparseFunction::indicator(ctx, ones({0}));
  const auto pair = SparseFunction::indicator(ctx, ones({0, 1}));
  CHECK(t_k_direct(delta, 2) == 1.0);
  CHECK(t_k_direct(pair, 1) == 2.0);
  CHECK(t_k_direct(pair, 2) == 6.0);
  CHECK(t_k_enumerate(pair, 2) == 6.0);
  CHECK(t_k_spectral(pair, 2) == Approx(6.0).epsilon(1e-12));
  for (int k = 1; k <= 4; ++k) CHECK(t_k_spectral(delta, k) == Approx(1.0).epsilon(1e-12));
  CHECK(oracle::t_k(pair, 2) == 6.0);
}

TEST_CASE("T_1 is the l2 mass") {
  Rng rng(1);
  const GroupContext ctx(11, 2);
  for (int t = 0; t < 20; ++t) {
    const auto f = helpers::random_function(rng, ctx, 1 + rng.below(20));
    CHECK(t_k_direct(f, 1) == Approx(f.l2norm() * f.l2norm()).epsilon(1e-9));
  }
}

TEST_CASE("direct, spectral and literal energies agree") {
  Rng rng(2);
  for (std::int64_t p : {5, 7, 11, 101}) {
    const GroupContext ctx(p, 1);
    for (int k = 1; k <= 3; ++k) {
      const auto f = helpers::random_function(rng, ctx, std::min<std::int64_t>(p, 8));
      const double direct = t_k_direct(f, k);
      CHECK(std::abs(direct - t_k_spectral(f, k)) <= 1e-6 * direct);
      CHECK(t_k_enumerate(f, k) == Approx(direct).epsilon(1e-9));
      CHECK(oracle::t_k(f, k) == Approx(direct).epsilon(1e-9));
    }
  }
  // Indicator inputs give exact integer counts.
  const GroupContext c2(5, 2);
  for (int t = 0; t < 10; ++t) {
    const auto s = helpers::random_set(rng, c2, 1 + rng.below(8));
    const auto f = SparseFunction::indicator(c2, s);
    for (int k = 1; k <= 3; ++k) {
      const double e = t_k_enumerate(f, k);
      CHECK(e == t_k_direct(f, k));
      CHECK(e == std::round(e));
      CHECK(e == oracle::t_k(f, k));
    }
  }
}

TEST_CASE("integer-set energies") {
  const std::vector<std::int64_t> s{1, 2};
  CHECK(t_k_integers(s, 1) == 2.0);
  CHECK(t_k_integers(s, 2) == 6.0);
  // Sidon-like set: only trivial coincidences.
  const std::vector<std::int64_t> sidon{1, 2, 5, 11};
  CHECK(t_k_integers(sidon, 2) == 2.0 * 16 - 4);
  // Over Z the set {0, 50, 100} has T_2 = 19; mod 100 it wraps.
  const std::vector<std::int64_t> ap{0, 50, 100};
  CHECK(t_k_integers(ap, 2) == 19.0);
}

TEST_CASE("dissociativity") {
  const GroupContext c7(7, 1);
  const auto a = is_dissociated(ones({1, 2}), c7);
  CHECK(a.dissociated);
  CHECK(a.witness.empty());
  const auto b = is_dissociated(ones({1, 2, 3}), c7);
  CHECK_FALSE(b.dissociated);
  CHECK(b.witness == std::vector<int>{1, 1, -1});
  CHECK(b.witness_holds(c7));
  CHECK(is_dissociated(ones({5}), c7).dissociated);
  CHECK_FALSE(is_dissociated(ones({0}), c7).dissociated);

  Rng rng(3);
  for (auto [p, d] : {std::pair{23, 1}, {101, 1}, {5, 2}, {3, 3}}) {
    const GroupContext ctx(p, d);
    for (int t = 0; t < 30; ++t) {
      const auto s = helpers::random_set(rng, ctx, 1 + rng.below(6), true);
      const auto cert = is_dissociated(s, ctx);
      CHECK(cert.dissociated == oracle::dissociated(s, p));
      CHECK(cert.witness_holds(ctx));
    }
  }
  Config tight;
  tight.dissociation_cap = 3;
  CHECK_THROWS_AS(is_dissociated(ones({1, 2, 4, 8}), GroupContext(101, 1), tight), BudgetError);
}

TEST_CASE("additive dimension") {
  const GroupContext c7(7, 1);
  const auto d = additive_dimension(ones({1, 2, 3}), c7, DimensionMode::exact);
  CHECK(d.value == 2);
  CHECK(d.subset == ones({1, 2}));
  CHECK(additive_dimension(ones({4}), c7, DimensionMode::exact).value == 1);
  CHECK(additive_dimension(std::vector<ZpVector>{}, c7, DimensionMode::exact).value == 0);

  Rng rng(4);
  for (auto [p, d2] : {std::pair{23, 1}, {31, 1}, {5, 2}}) {
    const GroupContext ctx(p, d2);
    for (int t = 0; t < 25; ++t) {
      const auto s = helpers::random_set(rng, ctx, 1 + rng.below(8), true);
      const auto exact = additive_dimension(s, ctx, DimensionMode::exact);
      const auto greedy = additive_dimension(s, ctx, DimensionMode::greedy);
      CHECK(exact.value == oracle::dimension(s, p));
      CHECK(exact.value >= greedy.value);
      CHECK(oracle::dissociated(exact.subset, p));
      CHECK(oracle::dissociated(greedy.subset, p));
    }
  }
  Config tight;
  tight.dimension_cap = 2;
  CHECK_THROWS_AS(additive_dimension(ones({1, 2, 3}), c7, DimensionMode::exact, tight), BudgetError);
}

TEST_CASE("signed subset sums") {
  const GroupContext c7(7, 1);
  // {0, +-1, +-2, +-1+-2} = all of Z_7.
  CHECK(signed_subset_sums(ones({1, 2}), c7).size() == 7);
  CHECK(signed_subset_sums(std::vector<ZpVector>{}, c7) == std::vector<std::uint64_t>{0});
}

TEST_CASE("level sets") {
  const GroupContext ctx(11, 1);
  SparseFunction uni(ctx);
  for (int x = 0; x < 4; ++x) uni.set(ZpVector{x}, std::polar(1.0, x * 0.7));
  const auto l1 = level_sets(uni);
  CHECK(l1.count() == 1);
  CHECK(l1.level(1) == uni.support());

  SparseFunction f(ctx);
  f.set(ZpVector{0}, 1.0);
  f.set(ZpVector{1}, 2.0);
  f.set(ZpVector{2}, Complex(3, 4));
  const auto ls = level_sets(f);
  CHECK(ls.count() == 3);
  CHECK(ls.level(1) == ones({0}));
  CHECK(ls.level(2) == ones({1}));
  CHECK(ls.level(3) == ones({2}));
  CHECK(level_index(3.0) == 2);
  CHECK(level_index(1.0) == 1);
  CHECK(level_index(4.0) == 3);

  f.set(ZpVector{3}, 0.5);
  CHECK_THROWS_AS(level_sets(f), HypothesisError);
}

TEST_CASE("superadditivity and pointwise domination on random functions") {
  Rng rng(5);
  const GroupContext ctx(13, 2);
  for (int t = 0; t < 30; ++t) {
    const auto f = helpers::random_function(rng, ctx, 1 + rng.below(14), 1.0, 16.0);
    const auto ls = level_sets(f);
    double parts = 0;
    for (std::size_t j = 0; j < ls.count(); ++j) {
      if (ls.levels[j].empty()) continue;
      const auto ind = SparseFunction::indicator(ctx, ls.levels[j]);
      parts += t_k_direct(ind, 2);
      for (int k = 1; k <= 2; ++k)
        CHECK(t_k_direct(f.restricted_to(ls.levels[j]), k) <=
              std::pow(2.0, 2.0 * (j + 1) * k) * t_k_direct(ind, k) * (1 + 1e-9));
    }
    CHECK(t_k_direct(SparseFunction::indicator(ctx, f.support()), 2) >= parts - 1e-6 * parts);
  }
}

TEST_CASE("scattered families") {
  const GroupContext ctx(101, 1);
  const auto empty = build_scattered_family(std::vector<Residue>{}, 1, 1, ctx);
  CHECK(empty.shell_count() == 0);
  CHECK(empty.max_level == 5);

  std::vector<Residue> b;
  for (int x = 1; x <= 12; ++x) b.push_back(x);
  const auto fam = build_scattered_family(b, 1, 1, ctx);
  REQUIRE(fam.shell_count() == 2);
  CHECK(fam.shells[0].elements == std::vector<std::int64_t>{3});
  CHECK(fam.shells[0].index == 1);
  CHECK(fam.shells[1].elements == std::vector<std::int64_t>{9});
  CHECK(fam.shells[1].index == 2);
  CHECK(fam.thin_level == 5);
  CHECK(fam.well_formed());
  for (const auto& s : fam.shells)
    for (auto x : s.elements) {
      const auto hi = (std::int64_t{1} << s.level) * fam.m;
      CHECK(std::abs(x) > hi / 2);
      CHECK(std::abs(x) <= hi);
    }

  const auto tight = build_scattered_family(std::vector<Residue>{1, 100, 2, 99}, 2, 1, ctx);
  CHECK(tight.thin_level == 1);
  CHECK(tight.shell_count() == 0);
}

TEST_CASE("scattered energy bound holds on constructed families") {
  const GroupContext ctx(10007, 1);
  for (int m = 1; m <= 3; ++m) {
    std::vector<Residue> b;
    for (int i = 1; i <= 4; ++i)
      for (int j = 0; j < 3; ++j) b.push_back(ctx.reduce((std::int64_t{1} << (2 * i)) * m - j));
    const auto fam = build_scattered_family(b, m, 3, ctx);
    REQUIRE(fam.shell_count() >= 1);
    for (int k = 1; k <= 2; ++k)
      CHECK(t_k_integers(fam.elements(), k) <=
            scattered_energy_bound(k, fam.shell_count(), fam.shell_size));
  }
  CHECK(scattered_energy_bound(1, 1, 1) == 256.0);
  CHECK(scattered_energy_bound(2, 2, 3) == std::pow(2.0, 16) * 4 * 4 * 27);
}

TEST_CASE("Rudin ratio") {
  const GroupContext c7(7, 1);
  CHECK(rudin_ratio(ones({3}), 1, c7) == Approx(1.0));
  const double t2 = oracle::t_k(SparseFunction::indicator(c7, ones({1, 2})), 2);
  CHECK(rudin_ratio(ones({1, 2}), 2, c7) == Approx(std::sqrt(t2) / 4));
  const GroupContext c101(101, 1);
  const double t3 = oracle::t_k(SparseFunction::indicator(c101, ones({1, 2, 4})), 2);
  CHECK(rudin_ratio(ones({1, 2, 4}), 2, c101) == Approx(std::sqrt(t3) / 6));
  CHECK_THROWS_AS(rudin_ratio(ones({1, 2, 3}), 2, c7), HypothesisError);
}
