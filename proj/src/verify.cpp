#include "wiener/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "wiener/errors.hpp"
#include "wiener/random.hpp"
#include "wiener/reduction.hpp"

namespace wiener {

namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kEnergyTolerance = 1e-6;

double scaled(double rel, double a, double b) {
  return rel * std::max({1.0, std::abs(a), std::abs(b)});
}

VerificationReport inequality(const std::string& name, double lhs, double rhs, double rel) {
  VerificationReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tolerance = scaled(rel, lhs, rhs);
  r.pass = r.slack >= -r.tolerance;
  return r;
}

VerificationReport equality(const std::string& name, double lhs, double rhs, double rel) {
  VerificationReport r = inequality(name, lhs, rhs, rel);
  r.identity = true;
  r.slack = -std::abs(lhs - rhs);
  r.pass = r.slack >= -r.tolerance;
  return r;
}

const SparseFunction& need_f(const Instance& in, const std::string& name) {
  if (!in.f) throw InvalidArgument(name + ": instance needs a function f");
  return *in.f;
}

double total_energy_of_levels(const LevelSetDecomposition& levels, const GroupContext& ctx,
                              int k, const Config& cfg) {
  double sum = 0.0;
  for (const auto& s : levels.levels)
    if (!s.empty()) sum += t_k_direct(SparseFunction::indicator(ctx, s), k, cfg);
  return sum;
}

using Checker = std::function<VerificationReport(const Instance&, const Config&)>;

const std::map<std::string, Checker>& checkers() {
  static const std::map<std::string, Checker> table = {
      {"banach",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "banach");
         if (!in.g) throw InvalidArgument("banach: instance needs a second function g");
         const double lhs = wiener_norm(f, cfg) * wiener_norm(*in.g, cfg);
         const double rhs = wiener_norm(f.times(*in.g), cfg);
         return inequality("banach", lhs, rhs, kNormTolerance);
       }},
      {"inversion",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "inversion");
         return inequality("inversion", wiener_norm(f, cfg), f.max_abs(), kNormTolerance);
       }},
      {"parseval-upper",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "parseval-upper");
         return inequality("parseval-upper", f.l2norm(), wiener_norm(f, cfg), kNormTolerance);
       }},
      {"lemma1",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "lemma1");
         if (in.set.empty()) throw InvalidArgument("lemma1: instance needs a nonempty set Q");
         for (const auto& x : in.set)
           if (std::abs(f(x)) < in.level)
             throw InvalidArgument("lemma1: |f| < L somewhere on Q");
         const SparseFunction g = f.restricted_to(in.set);
         const double big_k = wiener_norm(f, cfg);
         const double q = static_cast<double>(g.support_size());
         const double l2sq = f.l2norm() * f.l2norm();
         const int k = in.k;
         const double rhs = std::pow(q, 2 * k) * std::pow(in.level, 4 * k) /
                            (l2sq * std::pow(big_k, 2 * k - 2));
         return inequality("lemma1", t_k_direct(g, k, cfg), rhs, kEnergyTolerance);
       }},
      {"tk-identity",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "tk-identity");
         return equality("tk-identity", t_k_direct(f, in.k, cfg), t_k_spectral(f, in.k, cfg),
                         kEnergyTolerance);
       }},
      {"superadditivity-T2",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "superadditivity-T2");
         const auto levels = level_sets(f);
         const double lhs = t_k_direct(SparseFunction::indicator(f.ctx(), f.support()), 2, cfg);
         const double rhs = total_energy_of_levels(levels, f.ctx(), 2, cfg);
         return inequality("superadditivity-T2", lhs, rhs, kEnergyTolerance);
       }},
      {"pointwise-domination",
       [](const Instance& in, const Config& cfg) {
         // T_k(g_j) <= 2^{2jk} T_k(S_j) for each level; report the tightest.
         const auto& f = need_f(in, "pointwise-domination");
         const auto levels = level_sets(f);
         std::optional<VerificationReport> worst;
         for (std::size_t idx = 0; idx < levels.count(); ++idx) {
           const auto& s = levels.levels[idx];
           if (s.empty()) continue;
           const int j = static_cast<int>(idx) + 1;
           const double lhs = std::pow(2.0, 2 * j * in.k) *
                              t_k_direct(SparseFunction::indicator(f.ctx(), s), in.k, cfg);
           const double rhs = t_k_direct(f.restricted_to(s), in.k, cfg);
           auto r = inequality("pointwise-domination", lhs, rhs, kEnergyTolerance);
           if (!worst || r.slack / r.tolerance < worst->slack / worst->tolerance) worst = r;
         }
         if (!worst) throw InvalidArgument("pointwise-domination: empty function");
         return *worst;
       }},
      {"scat",
       [](const Instance& in, const Config& cfg) {
         if (!in.family) throw InvalidArgument("scat: instance needs a scattered family");
         const auto& fam = *in.family;
         if (!fam.well_formed() || fam.shells.empty())
           throw InvalidArgument("scat: family is not a well-formed nonempty shell family");
         const auto q = fam.elements();
         const double lhs = scattered_energy_bound(in.k, fam.shell_count(), fam.shell_size);
         return inequality("scat", lhs, t_k_integers(q, in.k, cfg), kEnergyTolerance);
       }},
      {"line-monotone",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "line-monotone");
         if (!in.line) throw InvalidArgument("line-monotone: instance needs a line");
         return inequality("line-monotone", wiener_norm(f, cfg),
                           wiener_norm(restrict_to_line(f, *in.line), cfg), kNormTolerance);
       }},
      {"hyperplane-balance",
       [](const Instance& in, const Config& cfg) {
         const auto rep = find_balanced_hyperplane(in.set, in.group(), BalanceMode::exhaustive,
                                                   0, cfg);
         auto r = inequality("hyperplane-balance", rep.bound, rep.deviation, kNormTolerance);
         r.exact_ok = rep.within_bound;
         return r;
       }},
      {"line-balance",
       [](const Instance& in, const Config& cfg) {
         const auto res = find_balanced_line(in.set, in.group(), cfg);
         auto r = inequality("line-balance", res.density_bound,
                             std::abs(res.line_density - res.density), kNormTolerance);
         for (const auto& step : res.steps) r.exact_ok = r.exact_ok && step.within_bound;
         return r;
       }},
      {"complement-identity",
       [](const Instance& in, const Config& cfg) {
         const auto& ctx = in.group();
         std::vector<ZpVector> complement;
         for (std::uint64_t i = 0; i < ctx.order(); ++i) {
           ZpVector x = ctx.from_index(i);
           if (!std::binary_search(in.set.begin(), in.set.end(), x)) complement.push_back(x);
         }
         const double a = wiener_norm(SparseFunction::indicator(ctx, in.set), cfg);
         const double c = wiener_norm(SparseFunction::indicator(ctx, complement), cfg);
         const double delta = static_cast<double>(ctx.order() - complement.size()) /
                              static_cast<double>(ctx.order());
         return equality("complement-identity", a, c + 2 * delta - 1, kNormTolerance);
       }},
      {"dirichlet-bound",
       [](const Instance& in, const Config& cfg) {
         const auto r = find_dirichlet_q(in.residues, in.group(), cfg);
         auto rep = inequality("dirichlet-bound", static_cast<double>(r.bound),
                               static_cast<double>(r.max_abs), 0.0);
         rep.exact_ok = r.max_abs <= r.bound;
         return rep;
       }},
      {"pushforward-invariance",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "pushforward-invariance");
         const auto sep = find_separating_map(f.support(), f.ctx());
         return equality("pushforward-invariance", wiener_norm(f, cfg),
                         wiener_norm(pushforward(f, sep.map), cfg), kNormTolerance);
       }},
      {"separated-inner",
       [](const Instance& in, const Config& cfg) {
         const auto& f = need_f(in, "separated-inner");
         const auto sep = find_separating_map(f.support(), f.ctx());
         const auto norms = separated_inner_norms(pushforward(f, sep.map), cfg);
         const double lo = *std::min_element(norms.begin(), norms.end());
         return inequality("separated-inner", wiener_norm(f, cfg), lo, kNormTolerance);
       }},
  };
  return table;
}

// ---------------------------------------------------------------------------
// Random instances

std::vector<ZpVector> random_points(Rng& rng, const GroupContext& ctx, std::size_t size,
                                    bool nonzero) {
  const std::uint64_t total = ctx.order() - (nonzero ? 1 : 0);
  if (size > total) throw InvalidArgument("requested more points than the group holds");
  std::vector<std::uint64_t> picked;
  while (picked.size() < size) {
    std::uint64_t idx = rng.below(total) + (nonzero ? 1 : 0);
    if (std::find(picked.begin(), picked.end(), idx) == picked.end()) picked.push_back(idx);
  }
  std::sort(picked.begin(), picked.end());
  std::vector<ZpVector> out;
  for (auto i : picked) out.push_back(ctx.from_index(i));
  return out;
}

Complex unit_phase(Rng& rng) {
  const double phi = 2.0 * std::numbers::pi * rng.unit();
  return {std::cos(phi), std::sin(phi)};
}

Complex random_value(Rng& rng) {
  // Modulus in [0.25, 4) with a random phase.
  return unit_phase(rng) * (0.25 + 3.75 * rng.unit());
}

SparseFunction random_function(Rng& rng, const GroupContext& ctx, std::size_t size,
                               const std::function<Complex(Rng&)>& value) {
  SparseFunction f(ctx);
  for (const auto& x : random_points(rng, ctx, size, false)) f.set(x, value(rng));
  return f;
}

// Group drawn from a ladder of small (p, d); dense tables stay tiny.
GroupContext random_group(Rng& rng) {
  static const std::pair<std::int64_t, int> ladder[] = {{3, 1},  {5, 1},  {7, 1}, {11, 1},
                                                       {13, 1}, {101, 1}, {3, 2}, {5, 2},
                                                       {7, 2},  {3, 3}};
  const auto& [p, d] = ladder[rng.below(std::size(ladder))];
  return GroupContext(p, d);
}

std::size_t random_size(Rng& rng, const GroupContext& ctx, std::size_t cap) {
  const auto top = std::min<std::uint64_t>(ctx.order(), cap);
  return static_cast<std::size_t>(1 + rng.below(top));
}

Complex at_least_one(Rng& rng) {
  // Modulus in [1, 16).
  return unit_phase(rng) * std::exp2(4.0 * rng.unit());
}

Instance scat_instance(Rng& rng) {
  const GroupContext ctx(10007, 1);
  const std::int64_t m = rng.between(1, 3);
  const auto n = static_cast<std::size_t>(rng.between(1, 4));
  const auto shells = static_cast<std::size_t>(rng.between(1, 4));
  int l0 = 0;
  while (3 * (std::int64_t{1} << (l0 + 1)) * m <= ctx.p()) ++l0;
  std::vector<int> indices;
  for (int i = 1; 2 * i <= l0; ++i) indices.push_back(i);
  // Keep a random subset of the available shell indices.
  for (std::size_t i = indices.size(); i > 1; --i)
    std::swap(indices[i - 1], indices[rng.below(i)]);
  indices.resize(std::min(indices.size(), shells));
  std::vector<Residue> b;
  for (int i : indices) {
    const std::int64_t hi = (std::int64_t{1} << (2 * i)) * m;
    const std::int64_t lo = hi / 2 + 1;  // |x| in (hi/2, hi]
    std::vector<std::int64_t> ring;
    while (ring.size() < n + rng.below(3)) {
      std::int64_t x = rng.between(lo, hi);
      if (rng.below(2)) x = -x;
      if (std::find(ring.begin(), ring.end(), x) == ring.end()) ring.push_back(x);
      if (ring.size() >= static_cast<std::size_t>(2 * (hi - lo + 1))) break;
    }
    for (auto x : ring) b.push_back(ctx.reduce(x));
  }
  Instance in;
  in.ctx = ctx;
  in.family = build_scattered_family(b, m, n, ctx);
  in.k = static_cast<int>(rng.between(1, 2));
  return in;
}

using Generator = std::function<Instance(Rng&)>;

const std::map<std::string, Generator>& generators() {
  static const std::map<std::string, Generator> table = {
      {"banach",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 12), random_value);
         in.g = random_function(rng, ctx, random_size(rng, ctx, 12), random_value);
         // Overlapping supports make the product nontrivial.
         for (const auto& [x, v] : in.f->entries())
           if (rng.below(2)) in.g->set(x, random_value(rng));
         return in;
       }},
      {"inversion",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 16), random_value);
         return in;
       }},
      {"parseval-upper",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 16), random_value);
         return in;
       }},
      {"lemma1",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         const std::size_t size = random_size(rng, ctx, 12);
         if (rng.below(2)) {
           // Level-set concentrated: a few large values on a unimodular bed.
           in.f = random_function(rng, ctx, size, unit_phase);
           const auto supp = in.f->support();
           const std::size_t heavy = 1 + rng.below(std::max<std::size_t>(1, supp.size() / 3));
           const double big = std::exp2(static_cast<double>(rng.between(2, 6)));
           in.level = big;
           for (std::size_t i = 0; i < heavy; ++i) {
             in.f->set(supp[i], unit_phase(rng) * big);
             in.set.push_back(supp[i]);
             in.level = std::min(in.level, std::abs((*in.f)(supp[i])));
           }
         } else {
           in.f = random_function(rng, ctx, size, random_value);
           for (const auto& [x, v] : in.f->entries())
             if (in.set.empty() || rng.below(2)) in.set.push_back(x);
           in.level = std::numeric_limits<double>::infinity();
           for (const auto& x : in.set) in.level = std::min(in.level, std::abs((*in.f)(x)));
         }
         in.k = static_cast<int>(rng.between(2, 3));
         return in;
       }},
      {"tk-identity",
       [](Rng& rng) {
         static const std::int64_t primes[] = {5, 7, 11, 101};
         const GroupContext ctx(primes[rng.below(4)], 1);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 10), random_value);
         in.k = static_cast<int>(rng.between(1, 3));
         return in;
       }},
      {"superadditivity-T2",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 14), at_least_one);
         return in;
       }},
      {"pointwise-domination",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, 10), at_least_one);
         in.k = static_cast<int>(rng.between(1, 3));
         return in;
       }},
      {"scat", scat_instance},
      {"line-monotone",
       [](Rng& rng) {
         const GroupContext ctx(rng.below(2) ? 3 : 5, 2);
         Instance in;
         in.f = random_function(rng, ctx, random_size(rng, ctx, ctx.order()), random_value);
         Line l{random_points(rng, ctx, 1, false)[0], random_points(rng, ctx, 1, true)[0]};
         in.line = l;
         return in;
       }},
      {"hyperplane-balance",
       [](Rng& rng) {
         static const std::int64_t primes[] = {5, 7, 11};
         const GroupContext ctx(primes[rng.below(3)], static_cast<int>(rng.between(2, 3)));
         Instance in;
         in.ctx = ctx;
         in.set = random_points(rng, ctx, random_size(rng, ctx, ctx.order()), false);
         return in;
       }},
      {"line-balance",
       [](Rng& rng) {
         static const std::int64_t primes[] = {5, 7};
         const GroupContext ctx(primes[rng.below(2)], static_cast<int>(rng.between(2, 3)));
         Instance in;
         in.ctx = ctx;
         const auto lo = ctx.order() / static_cast<std::uint64_t>(ctx.p());  // density 1/p
         const auto size = lo + rng.below(ctx.order() - lo + 1);
         in.set = random_points(rng, ctx, static_cast<std::size_t>(size), false);
         return in;
       }},
      {"complement-identity",
       [](Rng& rng) {
         const auto ctx = random_group(rng);
         Instance in;
         in.ctx = ctx;
         in.set = random_points(rng, ctx, random_size(rng, ctx, ctx.order()), false);
         return in;
       }},
      {"dirichlet-bound",
       [](Rng& rng) {
         const GroupContext ctx(rng.below(2) ? 101 : 1009, 1);
         Instance in;
         in.ctx = ctx;
         for (const auto& x : random_points(rng, ctx, static_cast<std::size_t>(rng.between(1, 3)), true))
           in.residues.push_back(x[0]);
         return in;
       }},
      {"pushforward-invariance",
       [](Rng& rng) {
         const GroupContext ctx(rng.below(2) ? 11 : 13, 2);
         Instance in;
         // |A|^2 < 2p
         const auto cap = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * ctx.p())) - 1);
         in.f = random_function(rng, ctx, 1 + rng.below(cap), unit_phase);
         return in;
       }},
      {"separated-inner",
       [](Rng& rng) {
         const GroupContext ctx(rng.below(2) ? 11 : 13, 2);
         Instance in;
         const auto cap = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * ctx.p())) - 1);
         in.f = random_function(rng, ctx, 1 + rng.below(cap), unit_phase);
         return in;
       }},
  };
  return table;
}

void append_function(std::string& out, const SparseFunction& f) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "p=%lld;d=%d;", static_cast<long long>(f.ctx().p()), f.ctx().d());
  out += buf;
  for (const auto& [x, v] : f.entries()) {
    for (auto c : x.coords) out += std::to_string(c) + ",";
    std::snprintf(buf, sizeof buf, ":%.17g:%.17g;", v.real(), v.imag());
    out += buf;
  }
}

}  // namespace

const GroupContext& Instance::group() const {
  if (ctx) return *ctx;
  if (f) return f->ctx();
  throw InvalidArgument("instance carries no group");
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : checkers()) v.push_back(name);
    return v;
  }();
  return names;
}

bool is_check_name(const std::string& name) { return checkers().count(name) > 0; }

std::string canonical_form(const std::string& name, const Instance& in) {
  std::string out = name + "|";
  char buf[64];
  if (in.ctx) out += "ctx=" + std::to_string(in.ctx->p()) + "^" + std::to_string(in.ctx->d());
  out += "|f=";
  if (in.f) append_function(out, *in.f);
  out += "|g=";
  if (in.g) append_function(out, *in.g);
  out += "|set=";
  for (const auto& x : in.set) {
    for (auto c : x.coords) out += std::to_string(c) + ",";
    out += ";";
  }
  out += "|res=";
  for (auto r : in.residues) out += std::to_string(r) + ",";
  std::snprintf(buf, sizeof buf, "|L=%.17g|k=%d", in.level, in.k);
  out += buf;
  if (in.line) {
    out += "|line=";
    for (auto c : in.line->base.coords) out += std::to_string(c) + ",";
    out += "+u*";
    for (auto c : in.line->direction.coords) out += std::to_string(c) + ",";
  }
  if (in.family) {
    out += "|fam=m" + std::to_string(in.family->m) + ",N" + std::to_string(in.family->shell_size);
    for (const auto& s : in.family->shells) {
      out += ";i" + std::to_string(s.index) + ":";
      for (auto x : s.elements) out += std::to_string(x) + ",";
    }
  }
  return out;
}

std::uint64_t stable_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

VerificationReport check(const std::string& name, const Instance& instance, const Config& cfg) {
  auto it = checkers().find(name);
  if (it == checkers().end()) throw InvalidArgument("unknown check '" + name + "'");
  VerificationReport r = it->second(instance, cfg);
  if (cfg.tolerance > 0) r.tolerance = scaled(cfg.tolerance, r.lhs, r.rhs);
  r.pass = r.slack >= -r.tolerance && r.exact_ok;
  r.digest = stable_hash(canonical_form(name, instance));
  return r;
}

const std::vector<std::string>& monitor_names() {
  static const std::vector<std::string> names = {"prop1", "rudin", "th1-log"};
  return names;
}

MonitorRecord monitor(const std::string& name, const Instance& in, const Config& cfg) {
  MonitorRecord rec;
  rec.name = name;
  if (name == "prop1") {
    const auto& f = need_f(in, "prop1");
    level_sets(f);  // enforces |f| >= 1 on the support
    const double k = wiener_norm(f, cfg);
    const auto supp = f.support();
    const bool exact = supp.size() <= cfg.dimension_cap;
    const auto dim = additive_dimension(supp, f.ctx(),
                                        exact ? DimensionMode::exact : DimensionMode::greedy, cfg);
    rec.value = static_cast<double>(dim.value);
    rec.reference = k * k * (1.0 + std::log(f.l2norm() / k));
    rec.note = exact ? "dim=exact" : "dim=greedy(lower bound)";
  } else if (name == "rudin") {
    rec.value = rudin_ratio(in.set, in.k, in.group(), cfg);
    rec.reference = 1.0;
    rec.note = "k=" + std::to_string(in.k);
  } else if (name == "th1-log") {
    const auto& f = need_f(in, "th1-log");
    rec.value = wiener_norm(f, cfg);
    rec.reference = std::log(static_cast<double>(f.support_size()));
  } else {
    throw InvalidArgument("unknown monitor '" + name + "'");
  }
  rec.ratio = rec.reference > 0 ? rec.value / rec.reference
                                : std::numeric_limits<double>::quiet_NaN();
  rec.digest = stable_hash(canonical_form(name, in));
  return rec;
}

InstanceKind parse_instance_kind(const std::string& name) {
  if (name == "unimodular-function") return InstanceKind::unimodular_function;
  if (name == "indicator") return InstanceKind::indicator;
  if (name == "dissociated-candidate") return InstanceKind::dissociated_candidate;
  if (name == "product-pair") return InstanceKind::product_pair;
  throw InvalidArgument("unknown instance kind '" + name + "'");
}

Instance random_instance(InstanceKind kind, std::uint64_t seed, const InstanceParams& params) {
  const GroupContext ctx(params.p, params.d);
  Rng rng(seed);
  Instance in;
  in.ctx = ctx;
  switch (kind) {
    case InstanceKind::unimodular_function:
      in.f = random_function(rng, ctx, params.size, unit_phase);
      break;
    case InstanceKind::indicator:
      in.set = random_points(rng, ctx, params.size, false);
      in.f = SparseFunction::indicator(ctx, in.set);
      break;
    case InstanceKind::dissociated_candidate:
      in.set = random_points(rng, ctx, params.size, true);
      in.f = SparseFunction::indicator(ctx, in.set);
      break;
    case InstanceKind::product_pair:
      in.f = random_function(rng, ctx, params.size, random_value);
      in.g = random_function(rng, ctx, params.size, random_value);
      break;
  }
  return in;
}

std::vector<VerificationReport> run_suite(const std::string& name, std::uint64_t seed,
                                          std::size_t count, const Config& cfg) {
  auto it = generators().find(name);
  if (it == generators().end()) throw InvalidArgument("unknown check '" + name + "'");
  // One stream per check name so adding a check leaves the others intact.
  Rng rng(seed ^ stable_hash(name));
  std::vector<VerificationReport> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(check(name, it->second(rng), cfg));
  return out;
}

ScanRow make_scan_row(const SparseFunction& indicator, const std::string& structure,
                      const Config& cfg, TransformPath path) {
  ScanRow row;
  row.p = indicator.ctx().p();
  row.size = indicator.support_size();
  row.structure = structure;
  row.wiener_norm = wiener_norm(indicator, cfg, path);
  row.log_size = row.size > 0 ? std::log(static_cast<double>(row.size)) : 0.0;
  row.flagged = row.size < 2;
  row.ratio = row.flagged ? std::numeric_limits<double>::quiet_NaN()
                          : row.wiener_norm / row.log_size;
  return row;
}

std::vector<ScanRow> ap_scan(std::int64_t p, const std::vector<std::int64_t>& ns,
                             const Config& cfg, TransformPath path) {
  const GroupContext ctx(p, 1);
  std::vector<ScanRow> rows;
  for (auto n : ns) {
    if (n < 0) throw InvalidArgument("progression half-length must be >= 0");
    if (2 * (2 * n + 1) >= p)
      throw InvalidArgument("AP scan needs |A| < p/2; |A| = " + std::to_string(2 * n + 1) +
                            ", p = " + std::to_string(p));
    std::vector<ZpVector> a;
    for (std::int64_t x = -n; x <= n; ++x) a.push_back(ZpVector{ctx.reduce(x)});
    rows.push_back(make_scan_row(SparseFunction::indicator(ctx, a), "AP", cfg, path));
  }
  return rows;
}

std::vector<ScanRow> random_scan(std::int64_t p, const std::vector<std::size_t>& sizes,
                                 std::uint64_t seed, const Config& cfg) {
  const GroupContext ctx(p, 1);
  Rng rng(seed);
  std::vector<ScanRow> rows;
  for (auto s : sizes) {
    if (2 * static_cast<std::int64_t>(s) >= p)
      throw InvalidArgument("random scan needs |A| < p/2; |A| = " + std::to_string(s) +
                            ", p = " + std::to_string(p));
    const auto a = random_points(rng, ctx, s, false);
    rows.push_back(make_scan_row(SparseFunction::indicator(ctx, a), "random", cfg));
  }
  return rows;
}

}  // namespace wiener
