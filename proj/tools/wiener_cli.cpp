// Command-line front end: eval, verify, reduce, scan, dim and energy.
// Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 budget.

#include <algorithm>
#include <cstdio>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wiener/energy.hpp"
#include "wiener/errors.hpp"
#include "wiener/fourier.hpp"
#include "wiener/io.hpp"
#include "wiener/random.hpp"
#include "wiener/reduction.hpp"
#include "wiener/verify.hpp"

namespace {

using nlohmann::json;
using namespace wiener;

enum Exit { kOk = 0, kCheckFailure = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> compute_budget;
  std::optional<double> tolerance;
  std::optional<double> density_constant;
  std::string mode;
  std::string output;
};

Config make_config(const Options& o) {
  Config cfg;
  if (o.budget) cfg.dense_budget = *o.budget;
  if (o.compute_budget) cfg.compute_budget = *o.compute_budget;
  if (o.tolerance) cfg.tolerance = *o.tolerance;
  if (o.density_constant) cfg.density_constant = *o.density_constant;
  return cfg;
}

// Report text goes to --output (atomically) or to stdout.
void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    write_atomic(o.output, text);
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

TransformPath parse_path(const std::string& mode) {
  if (mode.empty() || mode == "auto") return TransformPath::automatic;
  if (mode == "naive") return TransformPath::naive;
  if (mode == "fast") return TransformPath::fast;
  throw InvalidArgument("--mode must be auto, naive or fast for this command");
}

// ---------------------------------------------------------------------------

int cmd_eval(const Options& o, const std::string& input, bool dump) {
  const Config cfg = make_config(o);
  const SparseFunction f = read_function_or_set(input);
  const auto path = parse_path(o.mode);
  if (f.empty()) {
    std::cerr << "warning: function has no entries; its Wiener norm is 0\n";
    std::cout << fixed12(0.0) << "\n";
    return kOk;
  }
  const Spectrum s = dft(f, cfg, path);
  std::cout << fixed12(s.l1()) << "\n";
  double top = 0.0, l2 = 0.0;
  std::size_t nonzero = 0;
  for (const auto& c : s.coefficients) {
    top = std::max(top, std::abs(c));
    l2 += std::norm(c);
    if (std::abs(c) > cfg.zero_clamp) ++nonzero;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "# p %lld d %d support %zu spectrum_nonzero %zu spectrum_max %.12g spectrum_l2 %.12g\n",
                static_cast<long long>(f.ctx().p()), f.ctx().d(), f.support_size(), nonzero, top,
                std::sqrt(l2));
  std::cout << buf;
  if (dump) {
    std::string out;
    for (std::uint64_t i = 0; i < s.coefficients.size(); ++i) {
      out += "coef";
      for (auto c : f.ctx().from_index(i).coords) out += " " + std::to_string(c);
      std::snprintf(buf, sizeof buf, " %.17g %.17g\n", s.coefficients[i].real(),
                    s.coefficients[i].imag());
      out += buf;
    }
    emit(o, out);
  }
  return kOk;
}

// A few instances per monitor, all derived from the seed.
std::vector<MonitorRecord> run_monitors(std::uint64_t seed, const Config& cfg) {
  std::vector<MonitorRecord> out;
  Rng rng(seed ^ stable_hash("monitors"));
  for (int i = 0; i < 3; ++i) {
    InstanceParams params{101, 1, static_cast<std::size_t>(rng.between(2, 8))};
    out.push_back(monitor("prop1", random_instance(InstanceKind::unimodular_function, rng.next(), params), cfg));
    auto cand = random_instance(InstanceKind::dissociated_candidate, rng.next(), params);
    if (!is_dissociated(cand.set, cand.group(), cfg).dissociated) {
      auto dim = additive_dimension(cand.set, cand.group(), DimensionMode::exact, cfg);
      cand.set = dim.subset;
    }
    cand.k = static_cast<int>(rng.between(1, 3));
    out.push_back(monitor("rudin", cand, cfg));
    const std::int64_t n = rng.between(1, 20);
    const GroupContext ctx(101, 1);
    std::vector<ZpVector> ap;
    for (std::int64_t x = -n; x <= n; ++x) ap.push_back(ZpVector{ctx.reduce(x)});
    Instance in;
    in.f = SparseFunction::indicator(ctx, ap);
    out.push_back(monitor("th1-log", in, cfg));
  }
  return out;
}

int cmd_verify(const Options& o, const std::string& suite, std::size_t count) {
  const Config cfg = make_config(o);
  std::vector<std::string> names;
  if (suite == "all")
    names = check_names();
  else if (is_check_name(suite))
    names = {suite};
  else
    throw InvalidArgument("unknown suite '" + suite + "'; known: all, " + [] {
      std::string s;
      for (const auto& n : check_names()) s += (s.empty() ? "" : ", ") + n;
      return s;
    }());

  // Suites are independent; each runs on its own worker.
  std::vector<std::future<std::vector<VerificationReport>>> jobs;
  for (const auto& name : names)
    jobs.push_back(std::async(std::launch::async, [&, name] {
      return run_suite(name, o.seed, count, cfg);
    }));
  std::vector<VerificationReport> reports;
  for (auto& j : jobs) {
    auto part = j.get();
    reports.insert(reports.end(), part.begin(), part.end());
  }
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.name, a.digest) < std::tie(b.name, b.digest);
  });

  std::vector<json> records;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    records.push_back(to_json(r));
    failed += r.pass ? 0 : 1;
  }
  if (suite == "all")
    for (const auto& m : run_monitors(o.seed, cfg)) records.push_back(to_json(m));

  json header = report_header(cfg, "verify " + suite);
  header["seed"] = o.seed;
  header["count"] = count;
  emit(o, format_report(header, records));
  std::cerr << reports.size() << " checks, " << failed << " failed\n";
  return failed ? kCheckFailure : kOk;
}

std::vector<Residue> parse_residues(const std::vector<std::int64_t>& values, const GroupContext& ctx) {
  std::vector<Residue> out;
  for (auto v : values) out.push_back(ctx.reduce(v));
  return out;
}

int cmd_reduce(const Options& o, const std::string& kind, const std::string& input,
               std::optional<std::int64_t> p, const std::vector<std::int64_t>& lambda) {
  const Config cfg = make_config(o);
  json header = report_header(cfg, "reduce " + kind);
  std::vector<json> records;
  char buf[256];

  if (kind == "dirichlet") {
    std::optional<SparseFunction> f;
    std::vector<Residue> lam;
    std::optional<GroupContext> ctx;
    if (!input.empty()) f = read_function_or_set(input);
    if (p) ctx.emplace(*p, 1);
    else if (f) ctx = f->ctx();
    else throw InvalidArgument("reduce dirichlet needs --p or an input file");
    if (!lambda.empty()) {
      lam = parse_residues(lambda, *ctx);
    } else if (f) {
      for (const auto& x : f->support()) lam.push_back(x[0]);
    } else {
      throw InvalidArgument("reduce dirichlet needs --lambda or an input file");
    }
    const auto r = find_dirichlet_q(lam, *ctx, cfg);
    json rec = {{"record", "dirichlet"}, {"name", "dirichlet"},  {"p", r.p},
                {"q", r.q},              {"max_abs", r.max_abs}, {"bound", r.bound},
                {"bound_real", r.bound_real}, {"exhaustive", r.exhaustive},
                {"lambda", lam},         {"rescaled", r.rescaled}};
    Instance in;
    in.ctx = *ctx;
    in.residues = lam;
    rec["digest"] = hex_digest(stable_hash(canonical_form("dirichlet", in)));
    records.push_back(rec);
    std::printf("q %lld max_abs %lld bound %lld\n", static_cast<long long>(r.q),
                static_cast<long long>(r.max_abs), static_cast<long long>(r.bound));
    if (f && !lambda.empty()) {
      const auto res = rescale_support(*f, lam, cfg);
      const double before = wiener_norm(*f, cfg), after = wiener_norm(res.rescaled, cfg);
      records.push_back({{"record", "rescale"}, {"name", "rescale"}, {"support", res.support},
                         {"within_third", res.within_third}, {"norm_before", before},
                         {"norm_after", after}, {"digest", rec["digest"]}});
      std::printf("norm before %s after %s\n", fixed12(before).c_str(), fixed12(after).c_str());
    }
    emit(o, format_report(header, records));
    return kOk;
  }

  if (input.empty()) throw InvalidArgument("reduce " + kind + " needs an input file");
  const SparseFunction f = read_function_or_set(input);
  const auto set = f.support();
  Instance in;
  in.f = f;
  const std::string digest = hex_digest(stable_hash(canonical_form(kind, in)));

  if (kind == "line") {
    const auto res = find_balanced_line(set, f.ctx(), cfg);
    for (const auto& step : res.steps) {
      auto j = to_json(step);
      j["digest"] = digest;
      records.push_back(j);
    }
    const double before = wiener_norm(f, cfg);
    const double after = wiener_norm(restrict_to_line(f, res.line), cfg);
    records.push_back({{"record", "line"}, {"name", "line"}, {"line", to_json(res.line)},
                       {"count", res.count}, {"density", res.density},
                       {"line_density", res.line_density}, {"density_bound", res.density_bound},
                       {"norm_before", before}, {"norm_after", after}, {"digest", digest}});
    std::string base, dir;
    for (auto c : res.line.base.coords) base += (base.empty() ? "" : ",") + std::to_string(c);
    for (auto c : res.line.direction.coords) dir += (dir.empty() ? "" : ",") + std::to_string(c);
    std::snprintf(buf, sizeof buf, "line base (%s) direction (%s) count %zu steps %zu\n",
                  base.c_str(), dir.c_str(), res.count, res.steps.size());
    std::cout << buf;
    std::printf("norm before %s after %s\n", fixed12(before).c_str(), fixed12(after).c_str());
  } else if (kind == "separating-map") {
    const auto sep = find_separating_map(set, f.ctx());
    const auto h = pushforward(f, sep.map);
    const double before = wiener_norm(f, cfg), after = wiener_norm(h, cfg);
    json matrix = json::array();
    for (int i = 0; i < sep.map.matrix.n; ++i) {
      json row = json::array();
      for (int j = 0; j < sep.map.matrix.n; ++j) row.push_back(sep.map.matrix(i, j));
      matrix.push_back(row);
    }
    records.push_back({{"record", "separating-map"}, {"name", "separating-map"},
                       {"row", to_json(sep.row)}, {"matrix", matrix},
                       {"first_coords", sep.first_coords}, {"norm_before", before},
                       {"norm_after", after}, {"digest", digest}});
    std::string fc;
    for (auto c : sep.first_coords) fc += (fc.empty() ? "" : ",") + std::to_string(c);
    std::printf("first coords %s\n", fc.c_str());
    std::printf("norm before %s after %s\n", fixed12(before).c_str(), fixed12(after).c_str());
  } else {
    throw InvalidArgument("unknown reduction '" + kind + "'; known: line, separating-map, dirichlet");
  }
  emit(o, format_report(header, records));
  return kOk;
}

int cmd_scan(const Options& o, const std::string& kind, std::int64_t p,
             const std::vector<std::int64_t>& sizes) {
  const Config cfg = make_config(o);
  std::vector<ScanRow> rows;
  if (kind == "ap") {
    rows = ap_scan(p, sizes, cfg, parse_path(o.mode));
  } else if (kind == "random") {
    std::vector<std::size_t> s;
    for (auto v : sizes) {
      if (v < 1) throw InvalidArgument("random scan sizes must be >= 1");
      s.push_back(static_cast<std::size_t>(v));
    }
    rows = random_scan(p, s, o.seed, cfg);
  } else {
    throw InvalidArgument("unknown scan '" + kind + "'; known: ap, random");
  }
  emit(o, format_scan_csv(rows));
  return kOk;
}

int cmd_dim(const Options& o, const std::string& input) {
  const Config cfg = make_config(o);
  const SparseFunction f = read_function_or_set(input);
  DimensionMode mode = DimensionMode::exact;
  if (o.mode == "greedy") mode = DimensionMode::greedy;
  else if (!o.mode.empty() && o.mode != "exact") throw InvalidArgument("--mode must be exact or greedy");
  const auto set = f.support();
  const auto dim = additive_dimension(set, f.ctx(), mode, cfg);
  json subset = json::array();
  for (const auto& x : dim.subset) subset.push_back(to_json(x));
  Instance in;
  in.f = f;
  const json rec = {{"record", "dimension"}, {"name", "dim"},
                    {"mode", mode == DimensionMode::exact ? "exact" : "greedy"},
                    {"value", dim.value}, {"subset", subset},
                    {"digest", hex_digest(stable_hash(canonical_form("dim", in)))}};
  std::printf("dim %zu (%s)\n", dim.value, mode == DimensionMode::exact ? "exact" : "greedy lower bound");
  if (!o.output.empty()) emit(o, format_report(report_header(cfg, "dim"), {rec}));
  return kOk;
}

int cmd_energy(const Options& o, const std::string& input, int k) {
  const Config cfg = make_config(o);
  const SparseFunction f = read_function_or_set(input);
  double value = 0.0;
  const std::string mode = o.mode.empty() ? "direct" : o.mode;
  if (mode == "direct") value = t_k_direct(f, k, cfg);
  else if (mode == "spectral") value = t_k_spectral(f, k, cfg);
  else if (mode == "enumerate") value = t_k_enumerate(f, k, cfg);
  else throw InvalidArgument("--mode must be direct, spectral or enumerate");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::printf("T_%d %s\n", k, buf);
  if (!o.output.empty()) {
    Instance in;
    in.f = f;
    in.k = k;
    const json rec = {{"record", "energy"}, {"name", "energy"}, {"k", k}, {"mode", mode},
                      {"value", value},
                      {"digest", hex_digest(stable_hash(canonical_form("energy", in)))}};
    emit(o, format_report(report_header(cfg, "energy"), {rec}));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener norms, additive energies and reductions on Z_p^d"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Seed for every random draw");
    sub->add_option("--budget", o.budget, "Largest p^d for dense tables (default 2^24)");
    sub->add_option("--compute-budget", o.compute_budget, "Cap on combinatorial search steps");
    sub->add_option("--tolerance", o.tolerance, "Relative tolerance override for checks");
    sub->add_option("--density-constant", o.density_constant, "Line search density constant C");
    sub->add_option("--mode", o.mode, "Command-specific mode");
    sub->add_option("--output,-o", o.output, "Output file (written atomically)");
  };

  std::string input, suite = "all", kind;
  bool dump = false;
  std::size_t count = 50;
  std::optional<std::int64_t> p;
  std::vector<std::int64_t> lambda, sizes;
  int k = 2;

  auto* eval = app.add_subcommand("eval", "Wiener norm of a function or set file");
  eval->add_option("input", input, "Function or set file")->required();
  eval->add_flag("--spectrum", dump, "Dump every Fourier coefficient");
  add_common(eval);

  auto* verify = app.add_subcommand("verify", "Run seeded inequality suites");
  verify->add_option("suite", suite, "Check name or 'all'");
  verify->add_option("--count", count, "Instances per suite")->check(CLI::PositiveNumber);
  add_common(verify);

  auto* reduce = app.add_subcommand("reduce", "Balanced line, separating map or Dirichlet rescaling");
  reduce->add_option("kind", kind, "line | separating-map | dirichlet")->required();
  reduce->add_option("input", input, "Function or set file");
  reduce->add_option("--p", p, "Prime modulus (dirichlet)");
  reduce->add_option("--lambda", lambda, "Residues (dirichlet)")->delimiter(',');
  add_common(reduce);

  auto* scan = app.add_subcommand("scan", "Wiener norm versus log|A| tables (CSV)");
  scan->add_option("kind", kind, "ap | random")->required();
  scan->add_option("--p", p, "Prime modulus")->required();
  scan->add_option("--sizes", sizes, "ap: half-lengths n; random: set sizes")
      ->delimiter(',')
      ->required();
  add_common(scan);

  auto* dim = app.add_subcommand("dim", "Additive dimension of a set");
  dim->add_option("input", input, "Function or set file")->required();
  add_common(dim);

  auto* energy = app.add_subcommand("energy", "T_k energy of a function");
  energy->add_option("input", input, "Function or set file")->required();
  energy->add_option("--k", k, "Order k >= 1")->check(CLI::PositiveNumber);
  add_common(energy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(o, input, dump);
    if (*verify) return cmd_verify(o, suite, count);
    if (*reduce) return cmd_reduce(o, kind, input, p, lambda);
    if (*scan) return cmd_scan(o, kind, *p, sizes);
    if (*dim) return cmd_dim(o, input);
    if (*energy) return cmd_energy(o, input, k);
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
