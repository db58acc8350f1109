#pragma once

// Named inequality harness. Every check evaluates both sides of one
// constant-free inequality (or identity) on a concrete instance; monitors
// record empirical ratios for statements whose constants are unspecified.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wiener/config.hpp"
#include "wiener/energy.hpp"
#include "wiener/fourier.hpp"
#include "wiener/zpd.hpp"

namespace wiener {

// Inputs for a check. Each named check reads only the fields it needs and
// throws InvalidArgument when one is missing.
struct Instance {
  std::optional<SparseFunction> f;
  std::optional<SparseFunction> g;
  std::optional<GroupContext> ctx;  // for set-only instances
  std::vector<ZpVector> set;        // Q, A or Lambda
  std::vector<Residue> residues;    // Lambda for Dirichlet rescaling
  double level = 1.0;               // L
  int k = 2;
  std::optional<Line> line;
  std::optional<ScatteredFamily> family;

  const GroupContext& group() const;
};

struct VerificationReport {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  // lhs - rhs for inequalities lhs >= rhs; -|lhs - rhs| for identities.
  double slack = 0;
  double tolerance = 0;
  bool identity = false;
  // Exact side conditions (integer forms of a bound) that must also hold.
  bool exact_ok = true;
  std::uint64_t digest = 0;
  bool pass = false;
};

// Registered check names, in report order.
const std::vector<std::string>& check_names();
bool is_check_name(const std::string& name);

// Throws InvalidArgument for an unknown name or a malformed instance.
VerificationReport check(const std::string& name, const Instance& instance,
                         const Config& cfg = {});

struct MonitorRecord {
  std::string name;
  double value = 0;      // the measured quantity
  double reference = 0;  // the expression it is compared against
  double ratio = 0;      // value / reference (NaN when undefined)
  std::string note;
  std::uint64_t digest = 0;
};

const std::vector<std::string>& monitor_names();
// prop1: dim S vs K^2 (1 + log(||f||_2 / K)); rudin: C_emp for a
// dissociated set; th1-log: ||f^||_1 vs log |S|.
MonitorRecord monitor(const std::string& name, const Instance& instance, const Config& cfg = {});

enum class InstanceKind { unimodular_function, indicator, dissociated_candidate, product_pair };

struct InstanceParams {
  std::int64_t p = 101;
  int d = 1;
  std::size_t size = 5;
};

InstanceKind parse_instance_kind(const std::string& name);
// Deterministic in (kind, seed, params). unimodular: values e^{i phi};
// indicator: value 1; dissociated-candidate: a set (and its indicator) of
// nonzero points; product-pair: two complex-valued functions f and g.
Instance random_instance(InstanceKind kind, std::uint64_t seed, const InstanceParams& params);

// count generated instances of the named check, all derived from seed.
std::vector<VerificationReport> run_suite(const std::string& name, std::uint64_t seed,
                                          std::size_t count, const Config& cfg = {});

struct ScanRow {
  std::int64_t p = 0;
  std::size_t size = 0;
  std::string structure;  // AP | random | subgroup | custom
  double wiener_norm = 0;
  double log_size = 0;
  double ratio = 0;  // NaN when size < 2
  bool flagged = false;  // ratio undefined
};

// A = {-n, .., n} mod p for each n. Throws InvalidArgument unless
// 2n + 1 < p / 2.
std::vector<ScanRow> ap_scan(std::int64_t p, const std::vector<std::int64_t>& ns,
                             const Config& cfg = {},
                             TransformPath path = TransformPath::automatic);

// Uniformly random subsets of Z_p with the given sizes (each < p/2).
std::vector<ScanRow> random_scan(std::int64_t p, const std::vector<std::size_t>& sizes,
                                 std::uint64_t seed, const Config& cfg = {});

ScanRow make_scan_row(const SparseFunction& indicator, const std::string& structure,
                      const Config& cfg = {}, TransformPath path = TransformPath::automatic);

// Canonical text form of a named instance and its 64-bit FNV-1a hash.
std::string canonical_form(const std::string& name, const Instance& instance);
std::uint64_t stable_hash(const std::string& text);

}  // namespace wiener
