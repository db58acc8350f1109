#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "wiener/errors.hpp"
#include "wiener/io.hpp"

using namespace wiener;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_function(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string parse_error_field(const std::string& text) {
  try {
    parse_function(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("function files round trip") {
  Rng rng(1);
  for (auto [p, d] : {std::pair{5, 1}, {7, 2}, {3, 3}}) {
    const GroupContext ctx(p, d);
    const auto f = helpers::random_function(rng, ctx, 1 + rng.below(ctx.order()));
    const std::string text = format_function(f);
    const auto g = parse_function(text);
    CHECK(g == f);  // bit-exact values
    CHECK(format_function(g) == text);
  }
}

TEST_CASE("function file syntax") {
  const std::string good =
      "# comment\nwiener-function v1\np 5\nd 2\n\nentry 0 1 1.5 -2  # trailing\nentry 4 4 0 1e-3\n";
  const auto f = parse_function(good);
  CHECK(f.support_size() == 2);
  CHECK(f(ZpVector{0, 1}) == Complex(1.5, -2));

  const std::string head = "wiener-function v1\np 5\nd 1\n";
  CHECK(parse_error_line("wiener-function v2\np 5\nd 1\n") == 1);
  CHECK(parse_error_field("wiener-function v1\np 6\nd 1\n") == "p");
  CHECK(parse_error_field("wiener-function v1\np 5\nd 0\n") == "d");
  CHECK(parse_error_line(head + "entry 5 1 0\n") == 4);
  CHECK(parse_error_field(head + "entry 5 1 0\n") == "x1");
  CHECK(parse_error_field(head + "entry 1 x 0\n") == "re");
  CHECK(parse_error_field(head + "entry 1 1 nan\n") == "im");
  CHECK(parse_error_line(head + "entry 1 1 0\nentry 1 2 0\n") == 5);
  CHECK(parse_error_field(head + "entry 1 0 0\n") == "entry");
  CHECK(parse_error_field(head + "entry 1 1\n") == "entry");
  CHECK(parse_error_field(head + "point 1\n") == "record");
  CHECK(parse_function(head).empty());
}

TEST_CASE("set files") {
  const auto s = parse_set(std::string("wiener-set v1\np 3\nd 2\npoint 2 2\npoint 0 1\n"));
  CHECK(s.points == std::vector<ZpVector>{{0, 1}, {2, 2}});
  CHECK(parse_set(format_set(s)).points == s.points);
  CHECK_THROWS_AS(parse_set(std::string("wiener-set v1\np 3\nd 1\npoint 1\npoint 1\n")), ParseError);
}

TEST_CASE("atomic writes and mixed input files") {
  const auto dir = std::filesystem::temp_directory_path() / "wiener-io-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "set.txt";
  write_atomic(path, "wiener-set v1\np 5\nd 1\npoint 0\npoint 1\n");
  const auto f = read_function_or_set(path);
  CHECK(f.support_size() == 2);
  CHECK(f(ZpVector{1}) == Complex(1));
  write_atomic(path, format_function(f));
  CHECK(read_function_or_set(path) == f);
  for (const auto& e : std::filesystem::directory_iterator(dir))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_function_or_set(dir / "missing"), InvalidArgument);
}

TEST_CASE("reports are self-describing JSON lines") {
  VerificationReport r;
  r.name = "banach";
  r.lhs = 1;
  r.rhs = 0.5;
  r.slack = 0.5;
  r.digest = 0xabc;
  r.pass = true;
  const auto text = format_report(report_header(Config{}, "verify"), {to_json(r)});
  const auto recs = parse_report(text);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["name"] == "banach");
  CHECK(recs[0]["digest"] == "0000000000000abc");
  CHECK(recs[0]["pass"] == true);
  CHECK_THROWS_AS(parse_report("{\"format\":\"other\"}\n"), ParseError);
  CHECK_THROWS_AS(parse_report(""), ParseError);
}

TEST_CASE("scan CSV") {
  ScanRow a{101, 1, "AP", 1.0, 0.0, 0.0, true};
  ScanRow b{101, 3, "AP", 1.5, std::log(3.0), 1.5 / std::log(3.0), false};
  const auto csv = format_scan_csv({a, b});
  CHECK(csv.rfind("p,size,structure,wiener_norm,log_size,ratio\n", 0) == 0);
  CHECK(csv.find("101,1,AP,1,0,\n") != std::string::npos);
  CHECK(csv.find("101,3,AP,1.5,") != std::string::npos);
}
