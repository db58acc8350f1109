#include "wiener/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "wiener/errors.hpp"

namespace wiener {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line, const std::string& field) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, field, "expected an integer, got '" + s + "'");
  return v;
}

double parse_real(const std::string& s, std::size_t line, const std::string& field) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError(line, field, "expected a finite real, got '" + s + "'");
  return v;
}

// Shared header / p / d prelude of function and set files.
struct Prelude {
  std::int64_t p = 0;
  int d = 0;
  std::optional<GroupContext> ctx;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::vector<std::string>& toks) {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      toks = tokens(raw);
      if (!toks.empty()) return true;
    }
    return false;
  }
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

Prelude read_prelude(Reader& r, const std::string& header) {
  std::vector<std::string> t;
  if (!r.next(t)) throw ParseError(r.line(), "header", "empty input");
  std::string joined;
  for (std::size_t i = 0; i < t.size(); ++i) joined += (i ? " " : "") + t[i];
  if (joined != header)
    throw ParseError(r.line(), "header", "expected '" + header + "', got '" + joined + "'");
  Prelude pre;
  for (const char* key : {"p", "d"}) {
    if (!r.next(t)) throw ParseError(r.line(), key, "missing");
    if (t[0] != key) throw ParseError(r.line(), key, "expected '" + std::string(key) + " <int>'");
    if (t.size() != 2) throw ParseError(r.line(), key, "expected exactly one value");
    const auto v = parse_int(t[1], r.line(), key);
    if (key[0] == 'p') {
      pre.p = v;
    } else {
      if (v < 1 || v > 64) throw ParseError(r.line(), "d", "dimension must be in [1, 64]");
      pre.d = static_cast<int>(v);
    }
  }
  try {
    pre.ctx.emplace(pre.p, pre.d);
  } catch (const Error& e) {
    throw ParseError(r.line() - 1, "p", e.what());
  }
  return pre;
}

ZpVector read_point(const std::vector<std::string>& t, std::size_t first, const Prelude& pre,
                    std::size_t line) {
  std::vector<std::int64_t> coords;
  for (int i = 0; i < pre.d; ++i) {
    const std::string field = "x" + std::to_string(i + 1);
    const auto v = parse_int(t[first + static_cast<std::size_t>(i)], line, field);
    if (v < 0 || v >= pre.p)
      throw ParseError(line, field, "coordinate " + std::to_string(v) + " outside [0, p)");
    coords.push_back(v);
  }
  return ZpVector{std::move(coords)};
}

std::string format_prelude(const char* header, const GroupContext& ctx) {
  return std::string(header) + "\np " + std::to_string(ctx.p()) + "\nd " +
         std::to_string(ctx.d()) + "\n";
}

}  // namespace

SparseFunction parse_function(std::istream& in) {
  Reader r(in);
  const Prelude pre = read_prelude(r, kFunctionHeader);
  SparseFunction f(*pre.ctx);
  std::vector<std::string> t;
  const std::size_t width = static_cast<std::size_t>(pre.d) + 3;
  while (r.next(t)) {
    if (t[0] != "entry") throw ParseError(r.line(), "record", "expected 'entry', got '" + t[0] + "'");
    if (t.size() != width)
      throw ParseError(r.line(), "entry",
                       "expected " + std::to_string(pre.d) + " coordinates and re im");
    const ZpVector x = read_point(t, 1, pre, r.line());
    const Complex v(parse_real(t[width - 2], r.line(), "re"),
                    parse_real(t[width - 1], r.line(), "im"));
    if (v == Complex{}) throw ParseError(r.line(), "entry", "zero values are not stored");
    if (f.entries().count(x)) throw ParseError(r.line(), "entry", "duplicate point");
    f.set(x, v);
  }
  return f;
}

SparseFunction parse_function(const std::string& text) {
  std::istringstream ss(text);
  return parse_function(ss);
}

std::string format_function(const SparseFunction& f) {
  std::string out = format_prelude(kFunctionHeader, f.ctx());
  char buf[80];
  for (const auto& [x, v] : f.entries()) {
    out += "entry";
    for (auto c : x.coords) out += " " + std::to_string(c);
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", v.real(), v.imag());
    out += buf;
  }
  return out;
}

PointSet parse_set(std::istream& in) {
  Reader r(in);
  const Prelude pre = read_prelude(r, kSetHeader);
  std::set<ZpVector> seen;
  std::vector<std::string> t;
  const std::size_t width = static_cast<std::size_t>(pre.d) + 1;
  while (r.next(t)) {
    if (t[0] != "point") throw ParseError(r.line(), "record", "expected 'point', got '" + t[0] + "'");
    if (t.size() != width)
      throw ParseError(r.line(), "point", "expected " + std::to_string(pre.d) + " coordinates");
    if (!seen.insert(read_point(t, 1, pre, r.line())).second)
      throw ParseError(r.line(), "point", "duplicate point");
  }
  return PointSet{*pre.ctx, {seen.begin(), seen.end()}};
}

PointSet parse_set(const std::string& text) {
  std::istringstream ss(text);
  return parse_set(ss);
}

std::string format_set(const PointSet& s) {
  std::string out = format_prelude(kSetHeader, s.ctx);
  for (const auto& x : std::set<ZpVector>(s.points.begin(), s.points.end())) {
    out += "point";
    for (auto c : x.coords) out += " " + std::to_string(c);
    out += "\n";
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SparseFunction read_function_or_set(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  std::string first;
  std::istringstream ss(text);
  for (std::string raw; std::getline(ss, raw);) {
    const auto t = tokens(raw);
    if (!t.empty()) {
      first = t[0] + (t.size() > 1 ? " " + t[1] : "");
      break;
    }
  }
  if (first == kSetHeader) {
    const PointSet s = parse_set(text);
    return SparseFunction::indicator(s.ctx, s.points);
  }
  return parse_function(text);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(static_cast<long long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("rename to '" + path.string() + "' failed: " + ec.message());
  }
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

nlohmann::json config_json(const Config& cfg) {
  return {{"dense_budget", cfg.dense_budget},
          {"enumeration_cap", cfg.enumeration_cap},
          {"compute_budget", cfg.compute_budget},
          {"fast_threshold", cfg.fast_threshold},
          {"dissociation_cap", cfg.dissociation_cap},
          {"dimension_cap", cfg.dimension_cap},
          {"density_constant", cfg.density_constant},
          {"sample_limit", cfg.sample_limit},
          {"zero_clamp", cfg.zero_clamp},
          {"tolerance", cfg.tolerance}};
}

nlohmann::json report_header(const Config& cfg, const std::string& command) {
  return {{"format", kReportFormat},
          {"version", kReportVersion},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", config_json(cfg)}};
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"record", "check"},   {"name", r.name},         {"lhs", r.lhs},
          {"rhs", r.rhs},        {"slack", r.slack},       {"tolerance", r.tolerance},
          {"identity", r.identity}, {"exact_ok", r.exact_ok}, {"digest", hex_digest(r.digest)}, {"pass", r.pass}};
}

nlohmann::json to_json(const MonitorRecord& r) {
  return {{"record", "monitor"}, {"name", r.name},   {"value", r.value},
          {"reference", r.reference}, {"ratio", r.ratio}, {"note", r.note},
          {"digest", hex_digest(r.digest)}};
}

nlohmann::json to_json(const ScanRow& r) {
  return {{"record", "scan"},        {"name", "scan-" + r.structure},
          {"p", r.p},                {"size", r.size},
          {"structure", r.structure}, {"wiener_norm", r.wiener_norm},
          {"log_size", r.log_size},  {"ratio", r.ratio},
          {"flagged", r.flagged}};
}

nlohmann::json to_json(const ZpVector& x) { return x.coords; }

nlohmann::json to_json(const Line& l) {
  return {{"base", to_json(l.base)}, {"direction", to_json(l.direction)}};
}

nlohmann::json to_json(const Hyperplane& h) { return {{"eta", to_json(h.eta)}, {"u", h.u}}; }

nlohmann::json to_json(const BalanceReport& r) {
  nlohmann::json j = {{"record", "balance"},    {"name", "balance"},
                      {"dimension", r.dimension}, {"set_size", r.set_size},
                      {"count", r.count},        {"target", r.target},
                      {"deviation", r.deviation}, {"bound", r.bound},
                      {"theta", r.theta},        {"within_bound", r.within_bound}};
  if (const auto* h = std::get_if<Hyperplane>(&r.object))
    j["hyperplane"] = to_json(*h);
  else
    j["line"] = to_json(std::get<Line>(r.object));
  return j;
}

std::string format_report(const nlohmann::json& header, const std::vector<nlohmann::json>& records) {
  std::string out = header.dump() + "\n";
  for (const auto& r : records) out += r.dump() + "\n";
  return out;
}

std::vector<nlohmann::json> parse_report(const std::string& text) {
  std::istringstream ss(text);
  std::string raw;
  std::size_t line = 0;
  std::vector<nlohmann::json> out;
  bool header = false;
  while (std::getline(ss, raw)) {
    ++line;
    if (raw.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, "record", e.what());
    }
    if (!header) {
      if (!j.is_object() || j.value("format", "") != kReportFormat)
        throw ParseError(line, "format", "not a report header");
      if (j.value("version", 0) != kReportVersion)
        throw ParseError(line, "version", "unsupported report version");
      header = true;
      continue;
    }
    if (!j.is_object() || !j.contains("name"))
      throw ParseError(line, "name", "record without a name");
    out.push_back(std::move(j));
  }
  if (!header) throw ParseError(line, "format", "missing report header");
  return out;
}

std::string format_scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = "p,size,structure,wiener_norm,log_size,ratio\n";
  char buf[160];
  for (const auto& r : rows) {
    // Undefined ratios are left empty.
    std::string ratio;
    if (!r.flagged) {
      std::snprintf(buf, sizeof buf, "%.17g", r.ratio);
      ratio = buf;
    }
    std::snprintf(buf, sizeof buf, "%lld,%zu,%s,%.17g,%.17g,", static_cast<long long>(r.p),
                  r.size, r.structure.c_str(), r.wiener_norm, r.log_size);
    out += buf + ratio + "\n";
  }
  return out;
}

}  // namespace wiener
