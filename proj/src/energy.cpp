#include "wiener/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_map>

#include "wiener/errors.hpp"

namespace wiener {

namespace {

void require_k(int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1, got " + std::to_string(k));
}

void charge(std::uint64_t& used, std::uint64_t amount, const Config& cfg, const char* what) {
  used += amount;
  if (used > cfg.compute_budget)
    throw BudgetError(std::string(what) + " exceeds compute budget " +
                      std::to_string(cfg.compute_budget));
}

std::vector<ZpVector> sorted_unique(std::span<const ZpVector> set, const GroupContext& ctx) {
  std::vector<ZpVector> out(set.begin(), set.end());
  for (const auto& x : out) ctx.check(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Energies

double t_k_direct(const SparseFunction& g, int k, const Config& cfg) {
  require_k(k);
  if (g.empty()) return 0.0;
  const auto& ctx = g.ctx();
  std::uint64_t used = 0;
  std::map<ZpVector, Complex> table = g.entries();
  for (int step = 1; step < k; ++step) {
    charge(used, table.size() * g.support_size(), cfg, "T_k convolution");
    std::map<ZpVector, Complex> next;
    for (const auto& [s, v] : table)
      for (const auto& [x, w] : g.entries()) next[ctx.add(s, x)] += v * w;
    table = std::move(next);
  }
  double total = 0.0;
  for (const auto& [s, v] : table) total += std::norm(v);
  return total;
}

double t_k_spectral(const SparseFunction& g, int k, const Config& cfg) {
  require_k(k);
  if (g.empty()) return 0.0;
  const Spectrum spec = dft(g, cfg);
  double sum = 0.0;
  for (const auto& c : spec.coefficients) sum += std::pow(std::norm(c), k);
  return std::pow(static_cast<double>(g.ctx().order()), 2 * k - 1) * sum;
}

double t_k_enumerate(const SparseFunction& g, int k, const Config& cfg) {
  require_k(k);
  const auto& ctx = g.ctx();
  std::vector<std::pair<ZpVector, Complex>> pts(g.entries().begin(), g.entries().end());
  const std::size_t n = pts.size();
  if (n == 0) return 0.0;
  std::uint64_t tuples = 1;
  for (int i = 0; i < 2 * k; ++i) {
    if (tuples > cfg.compute_budget / n) throw BudgetError("literal T_k enumeration too large");
    tuples *= n;
  }
  std::vector<std::size_t> digit(2 * static_cast<std::size_t>(k), 0);
  Complex total{};
  for (std::uint64_t t = 0; t < tuples; ++t) {
    ZpVector left = ctx.zero(), right = ctx.zero();
    Complex prod{1.0, 0.0};
    for (int i = 0; i < k; ++i) {
      left = ctx.add(left, pts[digit[i]].first);
      prod *= pts[digit[i]].second;
    }
    for (int i = k; i < 2 * k; ++i) {
      right = ctx.add(right, pts[digit[i]].first);
      prod *= std::conj(pts[digit[i]].second);
    }
    if (left == right) total += prod;
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < n) break;
      digit[i] = 0;
    }
  }
  return total.real();
}

double t_k_integers(std::span<const std::int64_t> set, int k, const Config& cfg) {
  require_k(k);
  std::vector<std::int64_t> elems(set.begin(), set.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (elems.empty()) return 0.0;
  std::uint64_t used = 0;
  std::map<std::int64_t, double> table;
  for (auto x : elems) table[x] = 1.0;
  for (int step = 1; step < k; ++step) {
    charge(used, table.size() * elems.size(), cfg, "integer T_k convolution");
    std::map<std::int64_t, double> next;
    for (const auto& [s, c] : table)
      for (auto x : elems) next[s + x] += c;
    table = std::move(next);
  }
  double total = 0.0;
  for (const auto& [s, c] : table) total += c * c;
  return total;
}

// ---------------------------------------------------------------------------
// Dissociativity

bool DissociationCertificate::witness_holds(const GroupContext& ctx) const {
  if (dissociated) return witness.empty();
  if (witness.size() != elements.size()) return false;
  bool nonzero = false;
  ZpVector sum = ctx.zero();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (witness[i] < -1 || witness[i] > 1) return false;
    if (witness[i] != 0) nonzero = true;
    sum = ctx.add(sum, ctx.scale(witness[i], elements[i]));
  }
  return nonzero && sum.is_zero();
}

namespace {

// Enumerates the 3^n sign patterns of elems, calling visit(pattern, sum)
// with pattern digits 0, 1, 2 standing for eps = 0, +1, -1. The all-zero
// pattern comes first.
template <typename Visit>
void for_each_pattern(const std::vector<ZpVector>& elems, const GroupContext& ctx, Visit&& visit) {
  const std::size_t n = elems.size();
  std::vector<int> digits(n, 0);
  ZpVector sum = ctx.zero();
  while (true) {
    if (!visit(digits, sum)) return;
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (digits[i] == 0) {
        digits[i] = 1;
        sum = ctx.add(sum, elems[i]);
        break;
      }
      if (digits[i] == 1) {
        digits[i] = 2;
        sum = ctx.sub(sum, ctx.scale(2, elems[i]));
        break;
      }
      digits[i] = 0;
      sum = ctx.add(sum, elems[i]);
    }
    if (i == n) return;
  }
}

int digit_to_eps(int digit) { return digit == 0 ? 0 : (digit == 1 ? 1 : -1); }

std::vector<int> normalize_sign(std::vector<int> eps) {
  for (int e : eps)
    if (e != 0) {
      if (e < 0)
        for (int& x : eps) x = -x;
      break;
    }
  return eps;
}

}  // namespace

DissociationCertificate is_dissociated(std::span<const ZpVector> set, const GroupContext& ctx,
                                       const Config& cfg) {
  DissociationCertificate cert;
  cert.elements = sorted_unique(set, ctx);
  const std::size_t n = cert.elements.size();
  if (n > cfg.dissociation_cap)
    throw BudgetError("dissociativity test on " + std::to_string(n) + " elements exceeds cap " +
                      std::to_string(cfg.dissociation_cap));
  const std::size_t half = n / 2;
  std::vector<ZpVector> left(cert.elements.begin(), cert.elements.begin() + half);
  std::vector<ZpVector> right(cert.elements.begin() + half, cert.elements.end());

  // Left half: first pattern reaching each sum. A nonzero pattern hitting 0
  // is already a witness.
  std::unordered_map<std::uint64_t, std::vector<int>> first_left;
  std::optional<std::vector<int>> found;
  for_each_pattern(left, ctx, [&](const std::vector<int>& digits, const ZpVector& sum) {
    const std::uint64_t key = ctx.index(sum);
    auto [it, inserted] = first_left.try_emplace(key, digits);
    if (!inserted && key == ctx.index(ctx.zero())) {
      std::vector<int> eps(n, 0);
      for (std::size_t i = 0; i < half; ++i) eps[i] = digit_to_eps(digits[i]);
      found = eps;
      return false;
    }
    return true;
  });

  if (!found) {
    bool first = true;
    for_each_pattern(right, ctx, [&](const std::vector<int>& digits, const ZpVector& sum) {
      if (first) {  // all-zero right pattern pairs only with a zero-sum left one
        first = false;
        return true;
      }
      auto it = first_left.find(ctx.index(ctx.neg(sum)));
      if (it == first_left.end()) return true;
      std::vector<int> eps(n, 0);
      for (std::size_t i = 0; i < half; ++i) eps[i] = digit_to_eps(it->second[i]);
      for (std::size_t i = 0; i < right.size(); ++i) eps[half + i] = digit_to_eps(digits[i]);
      found = eps;
      return false;
    });
  }

  if (found) {
    cert.dissociated = false;
    cert.witness = normalize_sign(*found);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Additive dimension

namespace {

using SumSet = std::vector<std::uint64_t>;  // sorted indices

bool contains(const SumSet& sums, std::uint64_t key) {
  return std::binary_search(sums.begin(), sums.end(), key);
}

SumSet extend(const SumSet& sums, const ZpVector& x, const GroupContext& ctx) {
  SumSet out;
  out.reserve(sums.size() * 3);
  for (auto s : sums) {
    const ZpVector v = ctx.from_index(s);
    out.push_back(s);
    out.push_back(ctx.index(ctx.add(v, x)));
    out.push_back(ctx.index(ctx.sub(v, x)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ExactSearch {
  const std::vector<ZpVector>& elems;
  const GroupContext& ctx;
  const Config& cfg;
  std::uint64_t used = 0;
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  bool have_best = false;

  void run(std::size_t pos, const SumSet& sums) {
    charge(used, sums.size() + 1, cfg, "exact additive dimension");
    if (current.size() > best.size() || !have_best) {
      best = current;
      have_best = true;
    }
    if (pos == elems.size()) return;
    // Even taking every remaining element cannot beat the incumbent.
    if (current.size() + (elems.size() - pos) <= best.size()) return;
    // x keeps the set dissociated iff x is not already a signed subset sum.
    const ZpVector& x = elems[pos];
    if (!contains(sums, ctx.index(x))) {
      current.push_back(pos);
      run(pos + 1, extend(sums, x, ctx));
      current.pop_back();
    }
    if (current.size() + (elems.size() - pos - 1) > best.size()) run(pos + 1, sums);
  }
};

}  // namespace

std::vector<std::uint64_t> signed_subset_sums(std::span<const ZpVector> set,
                                              const GroupContext& ctx, const Config& cfg) {
  SumSet sums{ctx.index(ctx.zero())};
  std::uint64_t used = 0;
  for (const auto& x : sorted_unique(set, ctx)) {
    charge(used, sums.size() * 3, cfg, "signed subset sums");
    sums = extend(sums, x, ctx);
  }
  return sums;
}

AdditiveDimension additive_dimension(std::span<const ZpVector> set, const GroupContext& ctx,
                                     DimensionMode mode, const Config& cfg) {
  const std::vector<ZpVector> elems = sorted_unique(set, ctx);
  AdditiveDimension result;
  result.mode = mode;
  const SumSet zero{ctx.index(ctx.zero())};
  if (mode == DimensionMode::greedy) {
    SumSet sums = zero;
    std::uint64_t used = 0;
    for (const auto& x : elems) {
      charge(used, sums.size() * 3, cfg, "greedy additive dimension");
      if (contains(sums, ctx.index(x))) continue;
      result.subset.push_back(x);
      sums = extend(sums, x, ctx);
    }
  } else {
    if (elems.size() > cfg.dimension_cap)
      throw BudgetError("exact additive dimension on " + std::to_string(elems.size()) +
                        " elements exceeds cap " + std::to_string(cfg.dimension_cap));
    ExactSearch search{elems, ctx, cfg, 0, {}, {}, false};
    search.run(0, zero);
    for (auto i : search.best) result.subset.push_back(elems[i]);
  }
  result.value = result.subset.size();
  return result;
}

// ---------------------------------------------------------------------------
// Level sets and scattered families

int level_index(double a) {
  int e = 0;
  std::frexp(a, &e);  // a = m 2^e with m in [1/2, 1)
  return e;
}

LevelSetDecomposition level_sets(const SparseFunction& f) {
  LevelSetDecomposition out;
  for (const auto& [x, v] : f.entries()) {
    double a = std::abs(v);
    // Unit-modulus values built from cos/sin may land just below 1.
    if (a < 1.0 && a >= 1.0 - kUnitSlack) a = 1.0;
    if (!(a >= 1.0))
      throw HypothesisError("level sets need |f(x)| >= 1 on the support; |f| = " +
                            std::to_string(a) + " found");
    const auto j = static_cast<std::size_t>(level_index(a));
    if (out.levels.size() < j) out.levels.resize(j);
    out.levels[j - 1].push_back(x);
  }
  return out;
}

std::vector<std::int64_t> ScatteredFamily::elements() const {
  std::vector<std::int64_t> out;
  for (const auto& s : shells) out.insert(out.end(), s.elements.begin(), s.elements.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool ScatteredFamily::well_formed() const {
  std::set<std::int64_t> seen;
  for (const auto& s : shells) {
    if (s.elements.size() != shell_size) return false;
    // |x| in (4^i m / 2, 4^i m]
    const std::int64_t hi = (std::int64_t{1} << (2 * s.index)) * m;
    for (auto x : s.elements) {
      const std::int64_t a = x < 0 ? -x : x;
      if (!(2 * a > hi && a <= hi)) return false;
      if (!seen.insert(x).second) return false;
    }
  }
  return true;
}

ScatteredFamily build_scattered_family(std::span<const Residue> b, std::int64_t m, std::size_t n,
                                       const GroupContext& ctx) {
  if (ctx.d() != 1) throw InvalidArgument("scattered families live on Z_p");
  if (m < 1 || n < 1) throw InvalidArgument("scattered family needs m >= 1 and N >= 1");
  ScatteredFamily fam;
  fam.m = m;
  fam.shell_size = n;
  // l0: maximal l with 2^l m <= p/3, i.e. 3 * 2^l m <= p.
  fam.max_level = -1;
  while (3 * (std::int64_t{1} << (fam.max_level + 1)) * m <= ctx.p()) ++fam.max_level;

  std::vector<std::int64_t> reps;
  for (auto x : b) reps.push_back(signed_rep(x, ctx));
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());

  for (int l = 1; l <= fam.max_level; ++l) {
    const std::int64_t lo = (std::int64_t{1} << (l - 1)) * m;
    const std::int64_t hi = (std::int64_t{1} << l) * m;
    std::vector<std::int64_t> ring;  // D_l \ D_{l-1}, ascending
    for (auto x : reps) {
      const std::int64_t a = x < 0 ? -x : x;
      if (a > lo && a <= hi) ring.push_back(x);
    }
    if (ring.size() < n) {
      if (!fam.thin_level) fam.thin_level = l;
      continue;
    }
    if (l % 2 == 0) {
      ScatteredShell shell;
      shell.index = l / 2;
      shell.level = l;
      shell.elements.assign(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(n));
      fam.shells.push_back(std::move(shell));
    }
  }
  if (fam.max_level < 0) fam.max_level = 0;
  return fam;
}

double scattered_energy_bound(int k, std::size_t shells, std::size_t shell_size) {
  const double kk = k;
  return std::pow(2.0, 8 * kk) * std::pow(kk, kk) * std::pow(static_cast<double>(shells), kk) *
         std::pow(static_cast<double>(shell_size), 2 * kk - 1);
}

double rudin_ratio(std::span<const ZpVector> lambda, int k, const GroupContext& ctx,
                   const Config& cfg) {
  require_k(k);
  const auto cert = is_dissociated(lambda, ctx, cfg);
  if (!cert.dissociated) throw HypothesisError("Rudin ratio needs a dissociated set");
  if (cert.elements.empty()) throw InvalidArgument("Rudin ratio of the empty set");
  const double t = t_k_direct(SparseFunction::indicator(ctx, cert.elements), k, cfg);
  return std::pow(t, 1.0 / k) / (k * static_cast<double>(cert.elements.size()));
}

}  // namespace wiener
