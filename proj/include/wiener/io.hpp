#pragma once

// Line-oriented file formats. Function and set files carry a versioned
// header followed by one record per line; '#' starts a comment. Reports are
// JSON lines whose first record is a header; scan tables are CSV.
//
//   wiener-function v1          wiener-set v1
//   p 5                         p 5
//   d 1                         d 2
//   entry 0 1 0                 point 0 0
//   entry 1 1 0                 point 0 1

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wiener/config.hpp"
#include "wiener/fourier.hpp"
#include "wiener/reduction.hpp"
#include "wiener/verify.hpp"
#include "wiener/zpd.hpp"

namespace wiener {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kFunctionHeader = "wiener-function v1";
inline constexpr const char* kSetHeader = "wiener-set v1";
inline constexpr const char* kReportFormat = "wiener-report";
inline constexpr int kReportVersion = 1;

// Throw ParseError carrying the 1-based line and the offending field.
SparseFunction parse_function(std::istream& in);
SparseFunction parse_function(const std::string& text);
// Entries in canonical (lexicographic) order, values with 17 significant digits.
std::string format_function(const SparseFunction& f);

struct PointSet {
  GroupContext ctx;
  std::vector<ZpVector> points;  // ascending, distinct
};

PointSet parse_set(std::istream& in);
PointSet parse_set(const std::string& text);
std::string format_set(const PointSet& s);

// Reads either file kind; a set file becomes its indicator function.
SparseFunction read_function_or_set(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);

// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string hex_digest(std::uint64_t digest);
nlohmann::json config_json(const Config& cfg);
nlohmann::json report_header(const Config& cfg, const std::string& command);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const MonitorRecord& r);
nlohmann::json to_json(const ScanRow& r);
nlohmann::json to_json(const BalanceReport& r);
nlohmann::json to_json(const ZpVector& x);
nlohmann::json to_json(const Line& l);
nlohmann::json to_json(const Hyperplane& h);

// Header line followed by one compact JSON record per line.
std::string format_report(const nlohmann::json& header, const std::vector<nlohmann::json>& records);
// Validates the header and returns the records.
std::vector<nlohmann::json> parse_report(const std::string& text);

std::string format_scan_csv(const std::vector<ScanRow>& rows);

}  // namespace wiener
