#include "wiener/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "wiener/energy.hpp"
#include "wiener/errors.hpp"
#include "wiener/random.hpp"

namespace wiener {

namespace {

std::vector<ZpVector> sorted_unique(std::span<const ZpVector> set, const GroupContext& ctx) {
  std::vector<ZpVector> out(set.begin(), set.end());
  for (const auto& x : out) ctx.check(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BalanceReport make_report(const GroupContext& ctx, std::variant<Hyperplane, Line> object,
                          std::size_t set_size, std::size_t count) {
  BalanceReport r;
  r.dimension = ctx.d();
  r.object = std::move(object);
  r.set_size = set_size;
  r.count = count;
  const double p = static_cast<double>(ctx.p());
  r.target = static_cast<double>(set_size) / p;
  r.deviation = std::abs(static_cast<double>(count) - r.target);
  r.bound = std::sqrt(static_cast<double>(set_size) / p);
  r.theta = r.bound > 0 ? r.deviation / r.bound : 0.0;
  const __int128 diff = static_cast<__int128>(ctx.p()) * static_cast<__int128>(count) -
                        static_cast<__int128>(set_size);
  r.within_bound = diff * diff <= static_cast<__int128>(set_size) * ctx.p();
  return r;
}

// |p count - |A||, the exact numerator of the deviation.
std::uint64_t scaled_deviation(std::int64_t p, std::size_t count, std::size_t size) {
  const auto a = static_cast<std::int64_t>(count) * p;
  const auto b = static_cast<std::int64_t>(size);
  return static_cast<std::uint64_t>(a > b ? a - b : b - a);
}

BalanceReport balance_exhaustive(const std::vector<ZpVector>& set, const GroupContext& ctx,
                                 const Config& cfg) {
  const auto directions = enumerate_directions(ctx, cfg);
  const double work = static_cast<double>(directions.size()) *
                      static_cast<double>(set.size() + static_cast<std::size_t>(ctx.p()));
  if (work > static_cast<double>(cfg.compute_budget))
    throw BudgetError("exhaustive hyperplane scan exceeds compute budget");
  const auto p = static_cast<std::size_t>(ctx.p());
  std::vector<std::size_t> counts(p);
  std::optional<Hyperplane> best;
  std::size_t best_count = 0;
  std::uint64_t best_dev = 0;
  for (const auto& eta : directions) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& x : set) ++counts[static_cast<std::size_t>(ctx.dot(x, eta))];
    for (std::size_t u = 0; u < p; ++u) {
      const std::uint64_t dev = scaled_deviation(ctx.p(), counts[u], set.size());
      if (!best || dev < best_dev) {
        best = Hyperplane{eta, static_cast<Residue>(u)};
        best_dev = dev;
        best_count = counts[u];
      }
    }
  }
  return make_report(ctx, *best, set.size(), best_count);
}

BalanceReport balance_sampled(const std::vector<ZpVector>& set, const GroupContext& ctx,
                              std::uint64_t seed, const Config& cfg) {
  const auto directions = enumerate_directions(ctx, cfg);
  Rng rng(seed);
  for (std::uint64_t attempt = 0; attempt < cfg.sample_limit; ++attempt) {
    const auto& eta = directions[rng.below(directions.size())];
    const auto u = static_cast<Residue>(rng.below(static_cast<std::uint64_t>(ctx.p())));
    const Hyperplane h{eta, u};
    std::size_t count = 0;
    for (const auto& x : set) count += h.contains(x, ctx) ? 1 : 0;
    BalanceReport r = make_report(ctx, h, set.size(), count);
    if (r.within_bound) return r;
  }
  throw Error("sampled hyperplane search hit the retry limit of " +
              std::to_string(cfg.sample_limit));
}

// Affine injection Z_p^n -> Z_p^d tracking the change of coordinates.
struct Embedding {
  GroupContext target;
  std::vector<ZpVector> columns;  // images of the basis vectors, each in Z_p^d
  ZpVector shift;

  ZpVector linear(const ZpVector& y) const {
    ZpVector out = target.zero();
    for (std::size_t j = 0; j < columns.size(); ++j)
      out = target.add(out, target.scale(y[j], columns[j]));
    return out;
  }
  ZpVector operator()(const ZpVector& y) const { return target.add(linear(y), shift); }
};

}  // namespace

BalanceReport find_balanced_hyperplane(std::span<const ZpVector> set, const GroupContext& ctx,
                                       BalanceMode mode, std::uint64_t seed, const Config& cfg) {
  if (ctx.d() < 2) throw InvalidArgument("hyperplane balancing needs d >= 2");
  const auto pts = sorted_unique(set, ctx);
  if (pts.empty()) throw HypothesisError("hyperplane balancing needs a nonempty set");
  return mode == BalanceMode::exhaustive ? balance_exhaustive(pts, ctx, cfg)
                                         : balance_sampled(pts, ctx, seed, cfg);
}

AffineMap flatten_hyperplane(const Hyperplane& h, const GroupContext& ctx) {
  validate(h, ctx);
  const int n = ctx.d();
  int pivot = 0;
  while (h.eta[pivot] == 0) ++pivot;
  ResidueMatrix m(n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    if (i != pivot) m(row++, i) = 1;
  for (int j = 0; j < n; ++j) m(n - 1, j) = h.eta[j];
  AffineMap t = AffineMap::linear(ctx, std::move(m));
  t.shift[n - 1] = ctx.reduce(-h.u);
  if (!t.is_invertible()) throw SingularMapError("hyperplane flattening map is singular");
  return t;
}

LineSearchResult find_balanced_line(std::span<const ZpVector> set, const GroupContext& ctx,
                                    const Config& cfg) {
  const int d = ctx.d();
  if (d < 2) throw InvalidArgument("line search needs d >= 2");
  auto points = sorted_unique(set, ctx);
  LineSearchResult result;
  result.density = static_cast<double>(points.size()) / static_cast<double>(ctx.order());
  if (result.density * static_cast<double>(ctx.p()) < cfg.density_constant)
    throw HypothesisError("line search needs density >= C/p with C = " +
                          std::to_string(cfg.density_constant) + "; density is " +
                          std::to_string(result.density));

  Embedding embed{ctx, {}, ctx.zero()};
  for (int i = 0; i < d; ++i) embed.columns.push_back(ctx.basis(i));

  for (int n = d; n >= 2; --n) {
    const GroupContext cur(ctx.p(), n);
    BalanceReport step = balance_exhaustive(points, cur, cfg);
    const Hyperplane h = std::get<Hyperplane>(step.object);
    result.density_bound += step.bound / std::pow(static_cast<double>(ctx.p()), n - 1);
    result.steps.push_back(step);

    if (n == 2) {
      // {x . eta = u} in Z_p^2 with eta normalized: eta = (1, e) or (0, 1).
      const ZpVector dir2 = cur.vec({-h.eta[1], h.eta[0]});
      const ZpVector base2 = h.eta[0] != 0 ? cur.vec({h.u, 0}) : cur.vec({0, h.u});
      result.line = Line{embed(base2), embed.linear(dir2)};
      break;
    }

    const AffineMap flat = flatten_hyperplane(h, cur);
    const AffineMap back = invert_affine(flat);
    const GroupContext lower(ctx.p(), n - 1);
    std::vector<ZpVector> next;
    for (const auto& x : points) {
      if (!h.contains(x, cur)) continue;
      ZpVector y = apply_affine(flat, x);
      y.coords.pop_back();
      next.push_back(std::move(y));
    }
    std::sort(next.begin(), next.end());
    // New coordinates y' in Z_p^{n-1} sit at back(y', 0) in Z_p^n.
    Embedding lowered{ctx, {}, embed(back.shift)};
    for (int j = 0; j < n - 1; ++j) {
      ZpVector col = cur.zero();
      for (int i = 0; i < n; ++i) col[i] = back.matrix(i, j);
      lowered.columns.push_back(embed.linear(col));
    }
    embed = std::move(lowered);
    points = std::move(next);
  }

  validate(result.line, ctx);
  const auto all = sorted_unique(set, ctx);
  for (const auto& x : all) result.count += result.line.contains(x, ctx) ? 1 : 0;
  result.line_density = static_cast<double>(result.count) / static_cast<double>(ctx.p());
  return result;
}

SparseFunction restrict_to_line(const SparseFunction& f, const Line& l) {
  const auto& ctx = f.ctx();
  validate(l, ctx);
  SparseFunction out(GroupContext(ctx.p(), 1));
  for (Residue u = 0; u < ctx.p(); ++u) {
    const Complex v = f(l.at(u, ctx));
    if (v != Complex{}) out.set(ZpVector{u}, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dirichlet rescaling

namespace {

using boost::multiprecision::cpp_int;

// Largest B >= 0 with B^n <= p^{n-1}.
std::int64_t dirichlet_integer_bound(std::int64_t p, std::size_t n) {
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(p), static_cast<unsigned>(n - 1));
  auto fits = [&](std::int64_t b) {
    return boost::multiprecision::pow(cpp_int(b), static_cast<unsigned>(n)) <= rhs;
  };
  auto b = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(p), 1.0 - 1.0 / static_cast<double>(n))));
  while (b > 0 && !fits(b)) --b;
  while (fits(b + 1)) ++b;
  return b;
}

std::int64_t max_scaled_abs(Residue q, const std::vector<Residue>& lambda, const GroupContext& ctx) {
  std::int64_t m = 0;
  for (auto l : lambda) m = std::max(m, canonical_abs(ctx.mul(q, l), ctx));
  return m;
}

}  // namespace

DirichletRescaling find_dirichlet_q(std::span<const Residue> lambda, const GroupContext& ctx,
                                    const Config& cfg) {
  if (ctx.d() != 1) throw InvalidArgument("Dirichlet rescaling works on Z_p");
  std::vector<Residue> lam;
  for (auto x : lambda) lam.push_back(ctx.reduce(x));
  std::sort(lam.begin(), lam.end());
  lam.erase(std::unique(lam.begin(), lam.end()), lam.end());
  if (lam.empty()) throw HypothesisError("Dirichlet rescaling needs a nonempty set");
  if (lam.front() == 0) throw HypothesisError("Dirichlet rescaling needs 0 outside the set");

  DirichletRescaling r;
  r.p = ctx.p();
  r.bound = dirichlet_integer_bound(ctx.p(), lam.size());
  r.bound_real = std::pow(static_cast<double>(ctx.p()), 1.0 - 1.0 / static_cast<double>(lam.size()));

  const double scan_work = static_cast<double>(ctx.p() - 1) * static_cast<double>(lam.size());
  if (scan_work <= static_cast<double>(cfg.compute_budget)) {
    for (Residue q = 1; q < ctx.p(); ++q)
      if (max_scaled_abs(q, lam, ctx) <= r.bound) {
        r.q = q;
        break;
      }
  } else {
    // Box pigeonhole: q values whose images share a box of side p/Q differ
    // by a q' with every |q' lambda| < p/Q; candidates are checked exactly.
    r.exhaustive = false;
    const auto n = lam.size();
    auto boxes = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(ctx.p() - 1), 1.0 / static_cast<double>(n))));
    boxes = std::max<std::int64_t>(boxes, 1);
    std::unordered_map<std::string, std::vector<Residue>> seen;
    std::uint64_t used = 0;
    for (Residue q = 0; q < ctx.p() && r.q == 0; ++q) {
      std::string key;
      for (auto l : lam) {
        const auto box = static_cast<__int128>(ctx.mul(q, l)) * boxes / ctx.p();
        key += std::to_string(static_cast<std::int64_t>(box)) + ",";
      }
      auto& bucket = seen[key];
      for (auto earlier : bucket) {
        if (++used > cfg.compute_budget) break;
        const Residue diff = q - earlier;
        if (max_scaled_abs(diff, lam, ctx) <= r.bound) {
          r.q = diff;
          break;
        }
      }
      if (used > cfg.compute_budget) break;
      bucket.push_back(q);
    }
  }
  if (r.q == 0)
    throw BudgetError("no admissible q found within the compute budget (p = " +
                      std::to_string(ctx.p()) + ")");
  r.max_abs = max_scaled_abs(r.q, lam, ctx);
  for (auto l : lam) r.rescaled.push_back(signed_rep(ctx.mul(r.q, l), ctx));
  std::sort(r.rescaled.begin(), r.rescaled.end());
  return r;
}

RescaledFunction rescale_support(const SparseFunction& f, std::span<const Residue> lambda,
                                  const Config& cfg) {
  const auto& ctx = f.ctx();
  if (ctx.d() != 1) throw InvalidArgument("rescaling works on Z_p");
  std::vector<ZpVector> lam_vec;
  for (auto l : lambda) lam_vec.push_back(ZpVector{ctx.reduce(l)});
  const auto sums = signed_subset_sums(lam_vec, ctx, cfg);
  for (const auto& [x, v] : f.entries())
    if (!std::binary_search(sums.begin(), sums.end(), ctx.index(x)))
      throw HypothesisError("support point " + std::to_string(x[0]) +
                            " is not a {-1,0,1}-combination of the basis set");

  RescaledFunction out{find_dirichlet_q(lambda, ctx, cfg), SparseFunction(ctx), {}, true};
  const Residue q = out.dirichlet.q;
  for (const auto& [x, v] : f.entries()) {
    const Residue b = ctx.mul(q, x[0]);
    out.rescaled.set(ZpVector{b}, v);
    const std::int64_t s = signed_rep(b, ctx);
    out.support.push_back(s);
    if (3 * (s < 0 ? -s : s) > ctx.p()) out.within_third = false;
  }
  std::sort(out.support.begin(), out.support.end());
  return out;
}

// ---------------------------------------------------------------------------
// Separating map

SeparatingMap find_separating_map(std::span<const ZpVector> set, const GroupContext& ctx) {
  const int d = ctx.d();
  if (d < 2) throw InvalidArgument("separating map needs d >= 2");
  const auto pts = sorted_unique(set, ctx);
  const auto n = static_cast<std::int64_t>(pts.size());
  if (n * n >= 2 * ctx.p())
    throw HypothesisError("separating map needs |A| < (2p)^{1/2}; |A| = " + std::to_string(n) +
                          ", p = " + std::to_string(ctx.p()));
  std::vector<ZpVector> diffs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diffs.push_back(ctx.sub(pts[i], pts[j]));

  const std::uint64_t total = ctx.order();
  std::optional<ZpVector> row;
  for (std::uint64_t idx = 1; idx < total && !row; ++idx) {
    ZpVector t = ctx.from_index(idx);
    bool ok = true;
    for (const auto& diff : diffs)
      if (ctx.dot(t, diff) == 0) {
        ok = false;
        break;
      }
    if (ok) row = std::move(t);
  }
  if (!row) throw Error("internal: no separating vector although |A|^2 < 2p");

  int pivot = 0;
  while ((*row)[pivot] == 0) ++pivot;
  ResidueMatrix m(d);
  for (int j = 0; j < d; ++j) m(0, j) = (*row)[j];
  int r = 1;
  for (int i = 0; i < d; ++i)
    if (i != pivot) m(r++, i) = 1;
  SeparatingMap out{AffineMap::linear(ctx, std::move(m)), *row, {}};
  if (!out.map.is_invertible()) throw Error("internal: separating map completion is singular");
  for (const auto& a : pts) out.first_coords.push_back(ctx.dot(*row, a));
  std::sort(out.first_coords.begin(), out.first_coords.end());
  if (std::adjacent_find(out.first_coords.begin(), out.first_coords.end()) !=
      out.first_coords.end())
    throw Error("internal: separating map left a repeated first coordinate");
  return out;
}

SparseFunction pushforward(const SparseFunction& f, const AffineMap& t) {
  if (!(t.ctx == f.ctx())) throw InvalidArgument("affine map lives on a different group");
  if (!t.is_invertible()) throw SingularMapError("pushforward needs an invertible map");
  SparseFunction h(f.ctx());
  for (const auto& [x, v] : f.entries()) h.set(apply_affine(t, x), v);
  return h;
}

std::vector<double> separated_inner_norms(const SparseFunction& h, const Config& cfg) {
  const auto& ctx = h.ctx();
  const int d = ctx.d();
  if (d < 2) throw InvalidArgument("inner-sum decomposition needs d >= 2");
  std::vector<Residue> firsts;
  for (const auto& [x, v] : h.entries()) firsts.push_back(x[0]);
  std::sort(firsts.begin(), firsts.end());
  if (std::adjacent_find(firsts.begin(), firsts.end()) != firsts.end())
    throw HypothesisError("support has repeated first coordinates");

  const GroupContext line(ctx.p(), 1);
  const GroupContext rest(ctx.p(), d - 1);
  const std::uint64_t count = rest.order();
  if (count > cfg.dense_budget) throw BudgetError("too many inner sums");
  std::vector<double> norms;
  norms.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const ZpVector xi = rest.from_index(idx);
    SparseFunction phi(line);
    for (const auto& [a, v] : h.entries()) {
      __int128 t = 0;
      for (int i = 1; i < d; ++i) t += static_cast<__int128>(a[i]) * xi[i - 1];
      const auto phase = static_cast<double>(static_cast<std::int64_t>(t % ctx.p()));
      const double angle = -2.0 * std::numbers::pi * phase / static_cast<double>(ctx.p());
      phi.set(ZpVector{a[0]}, v * Complex{std::cos(angle), std::sin(angle)});
    }
    norms.push_back(wiener_norm(phi, cfg));
  }
  return norms;
}

}  // namespace wiener
