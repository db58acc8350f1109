// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wiener/energy.hpp"
#include "wiener/reduction.hpp"
#include "wiener/verify.hpp"

using namespace wiener;

namespace {

// Pinned tolerances.
constexpr double kEnergyRel = 1e-6;
constexpr double kNormAbs = 1e-9;
constexpr double kFastRel = 1e-9;
constexpr double kMinSpeedup = 10.0;
// AP band, frozen from the naive p = 1009 calibration (n = 10, 31, 100, 250;
// ratios 0.7302 .. 0.5378). Upper edge: 1.1 x the largest calibrated ratio.
// Lower edge: 0.9 x the ratio predicted at |A| = 2001 by the least-squares
// fit W = 0.3585 ln|A| + 1.1608 to the calibration norms (0.511), since the
// ratio keeps decreasing past the calibrated sizes.
constexpr double kBandLo = 0.46;
constexpr double kBandHi = 0.80;
constexpr double kMaxBandSpread = 2.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
              o.detail.c_str(), seconds_since(start));
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool all_pass(const std::vector<VerificationReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const auto& r) { return r.pass; });
}

}  // namespace

int main() {
  report(1, "T_k direct equals spectral", [] {
    Rng rng(101);
    const std::int64_t primes[] = {5, 7, 11, 101};
    double worst = 0;
    const auto start = Clock::now();
    for (int i = 0; i < 200; ++i) {
      const GroupContext ctx(primes[i % 4], 1);
      const int k = 1 + (i / 4) % 3;
      const auto f = helpers::random_function(rng, ctx, 1 + rng.below(std::min<std::int64_t>(ctx.p(), 10)));
      const double direct = t_k_direct(f, k);
      worst = std::max(worst, std::abs(direct - t_k_spectral(f, k)) / direct);
    }
    const double t = seconds_since(start);
    return Outcome{worst <= kEnergyRel && t < 60, fmt("200 functions, max rel err %.3g, %.2fs", worst, t)};
  });

  report(2, "literal enumeration equals convolution table", [] {
    const GroupContext c5(5, 1);
    const double t2 = t_k_enumerate(SparseFunction::indicator(c5, std::vector<ZpVector>{{0}, {1}}), 2);
    bool ok = t2 == 6.0;
    Rng rng(102);
    int cases = 0;
    for (auto [p, d] : {std::pair{5, 1}, {11, 1}, {101, 1}, {5, 2}, {3, 3}}) {
      const GroupContext ctx(p, d);
      for (int t = 0; t < 20; ++t) {
        const auto s = helpers::random_set(rng, ctx, 1 + rng.below(std::min<std::uint64_t>(8, ctx.order())));
        const auto f = SparseFunction::indicator(ctx, s);
        for (int k = 1; k <= 3; ++k, ++cases) {
          const double e = t_k_enumerate(f, k);
          ok = ok && e == t_k_direct(f, k) && e == std::round(e) && e == oracle::t_k(f, k);
        }
      }
    }
    return Outcome{ok, fmt("{0,1} in Z_5 gives T_2 = %.0f; %.0f exact integer comparisons", t2, cases)};
  });

  report(3, "Banach, inversion, Parseval upper, complement identity", [] {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (const char* name : {"banach", "inversion", "parseval-upper", "complement-identity"}) {
      const auto rs = run_suite(name, 103, 500);
      const auto fails = std::count_if(rs.begin(), rs.end(), [](const auto& r) { return !r.pass; });
      ok = ok && fails == 0 && rs.size() == 500;
      detail += std::string(name) + " " + std::to_string(500 - fails) + "/500 ";
    }
    const double t = seconds_since(start);
    return Outcome{ok && t < 60, detail + fmt("in %.2fs", t)};
  });

  report(4, "level-set energy lower bound", [] {
    const auto rs = run_suite("lemma1", 104, 200);
    // Independent adversarial family: one heavy point on a unimodular bed.
    Rng rng(1041);
    bool adv = true;
    for (int t = 0; t < 50; ++t) {
      const GroupContext ctx(101, 1);
      auto f = helpers::random_function(rng, ctx, 12, 1.0, 1.0);
      const auto x = f.support()[0];
      const double big = std::exp2(1 + static_cast<double>(t % 6));
      f.set(x, big);
      Instance in;
      in.f = f;
      in.set = {x};
      in.level = big;
      in.k = 2 + t % 2;
      adv = adv && check("lemma1", in).pass;
    }
    return Outcome{all_pass(rs) && adv, "200 seeded plus 50 level-concentrated instances, k in {2,3}"};
  });

  report(5, "scattered energy bound", [] {
    const auto rs = run_suite("scat", 105, 100);
    double tightest = 1e300;
    for (const auto& r : rs) tightest = std::min(tightest, r.lhs / std::max(r.rhs, 1.0));
    return Outcome{all_pass(rs) && rs.size() == 100,
                   fmt("100 families, smallest bound / T_k = %.3g", tightest)};
  });

  report(6, "line restriction monotonicity", [] {
    const auto start = Clock::now();
    bool ok = true;
    std::size_t comparisons = 0;
    auto all_lines = [](std::int64_t p) {
      std::vector<Line> lines;
      const auto pts = oracle::all_points(p, 2);
      for (const auto& b : pts)
        for (const auto& dir : pts)
          if (!dir.is_zero()) lines.push_back(Line{b, dir});
      return lines;
    };
    const GroupContext c3(3, 2);
    const auto pts3 = oracle::all_points(3, 2);
    const auto lines3 = all_lines(3);
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      std::vector<ZpVector> s;
      for (std::size_t i = 0; i < 9; ++i)
        if (mask >> i & 1) s.push_back(pts3[i]);
      const auto f = SparseFunction::indicator(c3, s);
      const double w = wiener_norm(f);
      for (const auto& l : lines3) {
        ok = ok && w >= wiener_norm(restrict_to_line(f, l)) - kNormAbs;
        ++comparisons;
      }
    }
    const GroupContext c5(5, 2);
    const auto lines5 = all_lines(5);
    Rng rng(106);
    for (int t = 0; t < 300; ++t) {
      const auto f = helpers::random_function(rng, c5, 1 + rng.below(25));
      const double w = wiener_norm(f);
      for (const auto& l : lines5) {
        ok = ok && w >= wiener_norm(restrict_to_line(f, l)) - kNormAbs;
        ++comparisons;
      }
    }
    const double t = seconds_since(start);
    return Outcome{ok && t < 120, fmt("%.0f function/line pairs in %.2fs", static_cast<double>(comparisons), t)};
  });

  report(7, "hyperplane balance and line search steps", [] {
    Rng rng(107);
    const std::int64_t primes[] = {5, 7, 11};
    bool ok = true;
    double worst_theta = 0;
    for (int i = 0; i < 100; ++i) {
      const GroupContext ctx(primes[i % 3], 2 + (i / 3) % 2);
      const auto lo = ctx.order() / static_cast<std::uint64_t>(ctx.p());
      const auto a = helpers::random_set(rng, ctx, lo + rng.below(ctx.order() - lo + 1));
      const auto h = find_balanced_hyperplane(a, ctx);
      ok = ok && h.within_bound && h.deviation <= h.bound;
      worst_theta = std::max(worst_theta, h.theta);
      const auto l = find_balanced_line(a, ctx);
      for (const auto& s : l.steps) {
        ok = ok && s.within_bound;
        worst_theta = std::max(worst_theta, s.theta);
      }
      ok = ok && std::abs(l.line_density - l.density) <= l.density_bound + 1e-12;
    }
    return Outcome{ok, fmt("100 sets, max |theta| = %.3f", worst_theta)};
  });

  report(8, "separating map pipeline", [] {
    Rng rng(108);
    bool ok = true;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const GroupContext ctx(i % 2 ? 11 : 13, 2);
      const auto cap = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * ctx.p())) - 1);
      const auto f = helpers::random_function(rng, ctx, 1 + rng.below(cap), 1.0, 1.0);
      const auto sep = find_separating_map(f.support(), ctx);
      const std::set<Residue> firsts(sep.first_coords.begin(), sep.first_coords.end());
      ok = ok && sep.map.is_invertible() && firsts.size() == f.support_size();
      const auto h = pushforward(f, sep.map);
      const double w = wiener_norm(f), wh = wiener_norm(h);
      worst = std::max(worst, std::abs(w - wh));
      const auto inner = separated_inner_norms(h);
      ok = ok && std::abs(w - wh) <= kNormAbs &&
           w >= *std::min_element(inner.begin(), inner.end()) - kNormAbs;
    }
    return Outcome{ok, fmt("100 functions, max norm drift %.3g", worst)};
  });

  report(9, "Dirichlet rescaling", [] {
    Rng rng(109);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      const GroupContext ctx(i % 2 ? 101 : 1009, 1);
      std::vector<Residue> lam;
      for (const auto& x : helpers::random_set(rng, ctx, 1 + i % 3, true)) lam.push_back(x[0]);
      const auto r = find_dirichlet_q(lam, ctx);
      // Exact bound |q l|^n <= p^{n-1}, recomputed here.
      const int n = static_cast<int>(lam.size());
      for (auto l : lam) {
        __int128 lhs = 1, rhs = 1;
        for (int j = 0; j < n; ++j) lhs *= canonical_abs(ctx.mul(r.q, l), ctx);
        for (int j = 0; j < n - 1; ++j) rhs *= ctx.p();
        ok = ok && lhs <= rhs;
      }
      ok = ok && r.exhaustive && r.q == oracle::dirichlet_q(lam, ctx.p());
    }
    return Outcome{ok, "100 sets, exact bound and minimal q"};
  });

  report(10, "fast prime DFT", [] {
    Rng rng(110);
    double worst = 0;
    for (std::int64_t p : {3, 5, 7, 11, 101, 1009, 10007}) {
      const auto x = helpers::random_table(rng, static_cast<std::size_t>(p));
      worst = std::max(worst, relative_l2_error(dft_prime_fast(x), dft_prime_naive(x)));
    }
    const auto x = helpers::random_table(rng, 10007);
    auto t0 = Clock::now();
    const auto naive = dft_prime_naive(x);
    const double t_naive = seconds_since(t0);
    double t_fast = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      t0 = Clock::now();
      const auto fast = dft_prime_fast(x);
      t_fast = std::min(t_fast, seconds_since(t0));
    }
    const double speedup = t_naive / t_fast;
    return Outcome{worst <= kFastRel && speedup >= kMinSpeedup,
                   fmt("max rel l2 %.3g, speedup at p=10007 %.1fx", worst, speedup)};
  });

  report(11, "AP scan ratio band", [] {
    const auto cal = ap_scan(1009, {10, 31, 100, 250}, {}, TransformPath::naive);
    const auto rows = ap_scan(10007, {10, 31, 100, 316, 1000}, {}, TransformPath::fast);
    bool ok = true;
    for (const auto& r : cal) ok = ok && r.ratio >= kBandLo && r.ratio <= kBandHi;
    double lo = 1e300, hi = 0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
      ok = ok && r.ratio >= kBandLo && r.ratio <= kBandHi;
    }
    ok = ok && hi / lo <= kMaxBandSpread;
    char buf[128];
    std::snprintf(buf, sizeof buf, "ratios %.4f .. %.4f in [%.2f, %.2f], spread %.3f", lo, hi,
                  kBandLo, kBandHi, hi / lo);
    return Outcome{ok, buf};
  });

  report(12, "exact additive dimension", [] {
    const GroupContext c23(23, 1);
    bool ok = true;
    for (std::uint64_t mask = 0; mask < 512; ++mask) {
      std::vector<ZpVector> s;
      for (int i = 0; i < 9; ++i)
        if (mask >> i & 1) s.push_back(ZpVector{i + 1});
      ok = ok && additive_dimension(s, c23, DimensionMode::exact).value == oracle::dimension(s, 23);
    }
    const GroupContext c7(7, 1);
    const auto d = additive_dimension(std::vector<ZpVector>{{1}, {2}, {3}}, c7, DimensionMode::exact);
    ok = ok && d.value == 2;
    return Outcome{ok, fmt("512 subsets of {1..9} in Z_23 match the oracle; {1,2,3} in Z_7 has dim %.0f",
                           static_cast<double>(d.value))};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
