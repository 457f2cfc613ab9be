#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "bidiag/bench.hpp"
#include "bidiag/cli.hpp"
#include "bidiag/matrix_io.hpp"
#include "test_support.hpp"

using namespace bidiag;
using nlohmann::json;

namespace {

const std::string kData = BIDIAG_TEST_DATA_DIR;

Bidiagonal parse_text(const std::string& text, bool permissive = false) {
  std::istringstream in(text);
  return parse_matrix(in, "<text>", permissive);
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_text(text);
  } catch (const ParseError& e) {
    return e;
  }
  throw std::logic_error("expected a parse error for: " + text);
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::set<std::string> keys(const json& j) {
  std::set<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.insert(it.key());
  return k;
}

}  // namespace

// ------------------------------------------------------------- file format

TEST(MatrixFile, Examples) {
  EXPECT_EQ(parse_text("2\n1 1\n1\n"), Bidiagonal({1, 1}, {1}));
  const auto one = parse_text("1\n1.4142135623730951\n");
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.diag()[0], std::sqrt(2.0));
}

TEST(MatrixFile, NonPositiveDiagonalIsPositioned) {
  const auto e = parse_failure("2\n1 -1\n1\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 3u);
  EXPECT_EQ(e.token(), "-1");
}

TEST(MatrixFile, CommentsAndBlankLines) {
  const auto b = parse_text("# header\n\n3   # order\n2 3 5\n\n1 1 # tail\n");
  EXPECT_EQ(b, Bidiagonal({2, 3, 5}, {1, 1}));
}

TEST(MatrixFile, Errors) {
  EXPECT_EQ(parse_failure("").line(), 1u);
  EXPECT_EQ(parse_failure("x\n1\n").token(), "x");
  EXPECT_EQ(parse_failure("0\n").token(), "0");
  EXPECT_EQ(parse_failure("2 3\n1 1\n1\n").token(), "3");
  {
    const auto e = parse_failure("2\n1 1.5q\n1\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.token(), "1.5q");
  }
  {
    const auto e = parse_failure("3\n1 1\n1 1\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("expected 3 diagonal"), std::string::npos);
  }
  EXPECT_EQ(parse_failure("2\n1 1\n1 1\n").token(), "1");
  EXPECT_NE(std::string(parse_failure("2\n1 1\n").what()).find("missing superdiagonal"), std::string::npos);
  EXPECT_EQ(parse_failure("1\n1\n5\n").token(), "5");
  {
    const auto e = parse_failure("2\n1 1\n0\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.token(), "0");
  }
  EXPECT_EQ(parse_failure("1\n1e999\n").token(), "1e999");
  EXPECT_EQ(parse_failure("1\nnan\n").token(), "nan");
  EXPECT_NO_THROW(parse_text("2\n1 1\n0\n", true));
  EXPECT_THROW(parse_matrix_file(kData + "/does-not-exist.txt"), ParseError);
}

TEST(MatrixFile, FormatRoundTripIsBitwise) {
  bench::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 20));
    const Bidiagonal b = bench::random_bidiagonal(n, 1e-7, 1e7, rng);
    EXPECT_EQ(parse_text(format_matrix(b)), b);
  }
}

// --------------------------------------------------------------------- CLI

TEST(Cli, BothVariantsOnTwoByTwo) {
  const auto r = run_cli({"--input", kData + "/two.txt", "--max-order", "2", "--variant", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["variant"], "both");
  EXPECT_EQ(j["J"], json::parse("[3, 7]"));
  EXPECT_EQ(j["J_type2"], json::parse("[3, 7]"));
  EXPECT_DOUBLE_EQ(j["theta"][0].get<double>(), 0.5773502691896258);
  EXPECT_DOUBLE_EQ(j["theta"][1].get<double>(), 0.6147881529512644);
  EXPECT_EQ(j["rho"].get<double>(), j["theta"][0].get<double>());
  EXPECT_NEAR(j["upsilon"].get<double>(), 0.6180339887498949, 1e-15);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["max_order"], 2);
}

TEST(Cli, CountOpsFast2) {
  const auto r = run_cli({"--input", kData + "/two.txt", "--count-ops", "--variant", "fast2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["ops"], json::parse(R"({"adds": 4, "subs": 0, "muls": 8, "divs": 2})"));
  EXPECT_EQ(j["variant"], "fast2");
}

TEST(Cli, DefaultVariantDependsOnOrder) {
  EXPECT_EQ(json::parse(run_cli({"--input", kData + "/two.txt"}).out)["variant"], "fast2");
  EXPECT_EQ(json::parse(run_cli({"--input", kData + "/two.txt", "--max-order", "3"}).out)["variant"], "type1");
}

TEST(Cli, BadInputExitsOne) {
  const auto r = run_cli({"--input", kData + "/bad.txt"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find(":2:3:"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"--input", kData + "/missing.txt"}).code, 1);
  EXPECT_EQ(run_cli({"--input", kData + "/two.txt", "--variant", "fast2", "--max-order", "3"}).code, 1);
  EXPECT_EQ(run_cli({"--input", kData + "/two.txt", "--variant", "type9"}).code, 1);
  EXPECT_EQ(run_cli({}).code, 1);
}

TEST(Cli, OverflowExitsTwoWithPartialReport) {
  const auto path = std::filesystem::temp_directory_path() / "bidiag_overflow.txt";
  std::ofstream(path) << "2\n1e-3 1\n1\n";
  const auto r = run_cli({"--input", path.string(), "--max-order", "80"});
  EXPECT_EQ(r.code, 2);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "overflow");
  EXPECT_GT(j["J"].size(), 10u);
  EXPECT_LT(j["J"].size(), 80u);
  EXPECT_EQ(j["J"].size(), j["theta"].size());
}

TEST(Cli, OracleCheck) {
  auto r = run_cli({"--input", kData + "/three.txt", "--max-order", "3", "--oracle-check"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_LT(j["oracle"]["max_rel_err"].get<double>(), 1e-12);
  EXPECT_EQ(j["oracle"]["J_ref"].size(), 3u);
  EXPECT_GT(j["oracle"]["sigma_min"].get<double>(), j["theta"][2].get<double>());

  // An impossible tolerance turns the comparison into a failure.
  r = run_cli({"--input", kData + "/three.txt", "--max-order", "3", "--oracle-check", "--tol", "1e-300"});
  if (json::parse(r.out)["oracle"]["max_rel_err"].get<double>() > 1e-300) {
    EXPECT_EQ(r.code, 3);
  }
}

TEST(Cli, OracleRefusesLargeMatrices) {
  const auto path = std::filesystem::temp_directory_path() / "bidiag_large.txt";
  {
    bench::Rng rng(5);
    std::ofstream(path) << format_matrix(bench::random_bidiagonal(600, 0.5, 2.0, rng));
  }
  EXPECT_EQ(run_cli({"--input", path.string(), "--oracle-check"}).code, 1);
  EXPECT_EQ(run_cli({"--input", path.string()}).code, 0);
}

TEST(Cli, PrescaleMapsBoundsBack) {
  const auto path = std::filesystem::temp_directory_path() / "bidiag_scaled.txt";
  std::ofstream(path) << "2\n4 4\n4\n";  // 4 * the 2x2 example
  const auto r = run_cli({"--input", path.string(), "--prescale", "--variant", "type1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["scale_log2"], -2);
  EXPECT_EQ(j["J"], json::parse("[3, 7]"));
  EXPECT_NEAR(j["theta"][0].get<double>(), 4 * 0.5773502691896258, 1e-15);
  EXPECT_NEAR(j["upsilon"].get<double>(), 4 * 0.6180339887498949, 1e-14);
}

TEST(Cli, JsonKeySetDependsOnlyOnFlags) {
  const std::vector<std::string> flag_sets[] = {
      {},
      {"--count-ops"},
      {"--oracle-check", "--prescale"},
      {"--variant", "both", "--max-order", "1"},
  };
  for (const auto& flags : flag_sets) {
    std::set<std::string> first;
    for (const auto* file : {"/one.txt", "/two.txt", "/three.txt"}) {
      std::vector<std::string> args{"--input", kData + file};
      args.insert(args.end(), flags.begin(), flags.end());
      const auto r = run_cli(args);
      ASSERT_EQ(r.code, 0) << r.err;
      const auto k = keys(json::parse(r.out));
      if (first.empty()) first = k;
      EXPECT_EQ(k, first);
    }
  }
}

TEST(Cli, MultipleInputsGiveArray) {
  const auto r = run_cli({"--input", kData + "/one.txt", kData + "/two.txt", "--variant", "type2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[1]["J"], json::parse("[3, 7]"));
  EXPECT_EQ(j[1]["variant"], "type2");
}

TEST(Cli, CsvOutput) {
  const auto r = run_cli({"--input", kData + "/two.txt", "--format", "csv", "--variant", "both", "--count-ops"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line + "\n", cli::csv_header());
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",type"), std::string::npos);
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, DumpInputRoundTrips) {
  bench::Rng rng(8);
  const Bidiagonal b = bench::random_bidiagonal(7, 1e-3, 1e3, rng);
  const auto path = std::filesystem::temp_directory_path() / "bidiag_dump.txt";
  std::ofstream(path) << format_matrix(b);
  const auto r = run_cli({"--input", path.string(), "--dump-input"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  EXPECT_EQ(parse_matrix(in, "dump"), b);
}

TEST(Cli, NumbersUseSeventeenDigits) {
  const auto r = run_cli({"--input", kData + "/three.txt", "--max-order", "3"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  const double j1 = j["J"][0].get<double>();
  EXPECT_NE(r.out.find(format_double(j1)), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
