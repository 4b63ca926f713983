#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "qfrag/cli/commands.hpp"
#include "qfrag/errors.hpp"

using namespace qfrag;
using namespace qfrag::cli;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    for (std::string cell; std::getline(cells_in, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

SweepConfig sweep(std::vector<int> n, std::vector<std::int64_t> sizes) {
  SweepConfig c;
  c.local_dims = std::move(n);
  c.sizes = std::move(sizes);
  return c;
}

}  // namespace

TEST_CASE("float formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3) == "0.333333333333333");
  CHECK(format_double(7587.91604067351) == "7587.91604067351");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("table command") {
  const auto out = cmd_table(sweep({3}, {8}));
  CHECK(out.rfind("# qfrag table sizes=total base=e", 0) == 0);
  const auto rows = csv_rows(out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"N", "L_A", "L_B", "lambda", "d_lambda", "D_A", "D_B", "p_exact", "p_float"});
  CHECK(rows[1][7] == "2/7");
  CHECK(rows[2][7] == "9/14");
  CHECK(rows[3][7] == "1/14");
  CHECK(rows[3][4] == "55");

  const auto big = csv_rows(cmd_table(sweep({2, 3, 4}, {40, 64})));
  double sum = 0;
  int blocks = 0;
  for (std::size_t r = 1; r < big.size(); ++r) {
    if (big[r][3] == "0") {
      if (blocks++) CHECK(std::abs(sum - 1) <= 1e-12);
      sum = 0;
    }
    sum += std::stod(big[r][8]);
  }
  CHECK(std::abs(sum - 1) <= 1e-12);
  CHECK(blocks == 6);

  auto logs = sweep({3}, {8});
  logs.mode = ModeChoice::logspace;
  CHECK_THROWS_AS(cmd_table(logs), ValidationError);
  CHECK_THROWS_AS(cmd_table(sweep({3}, {})), ValidationError);
}

TEST_CASE("measures command") {
  const auto rows = csv_rows(cmd_measures(sweep({3, 2}, {8, 4})));
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"N", "L_A", "L_B", "mode", "base", "e_less", "e_greater"});
  CHECK(rows[1][0] == "2");
  CHECK(rows[1][1] == "2");
  CHECK(std::stod(rows[4][5]) == doctest::Approx(1.6230219328822));
  CHECK(std::stod(rows[4][6]) == doctest::Approx(std::log(131.0 / 14)).epsilon(1e-14));
  auto bits = sweep({2}, {4});
  bits.base = measures::LogBase::binary;
  CHECK(csv_rows(cmd_measures(bits))[1][6] == "1");
}

TEST_CASE("scan command") {
  auto c = sweep({2, 3}, {16, 64, 4096});
  c.svg_path = "unused.svg";
  const auto out = cmd_scan(c);
  const auto rows = csv_rows(out.csv);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].back() == "e_greater_asymp");
  CHECK(rows[3][4] == "logspace");
  CHECK(rows[1][4] == "exact");
  for (std::size_t r = 1; r < rows.size(); ++r) CHECK(std::stod(rows[r][6]) >= std::stod(rows[r][5]));
  // SU(2) rows carry the ½ log L curve in both asymptotic columns
  CHECK(rows[1][7] == rows[1][8]);
  for (std::size_t r = 5; r <= 6; ++r) {
    CHECK(std::stod(rows[r][5]) > std::stod(rows[r - 1][5]));
    CHECK(std::stod(rows[r][6]) > std::stod(rows[r - 1][6]));
  }
  CHECK(out.svg.rfind("<svg", 0) == 0);
  CHECK(out.svg.find("polyline") != std::string::npos);
  CHECK(cmd_scan(sweep({3}, {16})).svg.empty());

  auto skew = sweep({3}, {16});
  skew.cut = Cut{1, 3};
  CHECK(csv_rows(cmd_scan(skew).csv)[1][7] == "nan");
}

TEST_CASE("truncate command") {
  auto c = sweep({3}, {8});
  c.eps = {Rational(1, 10), Rational(1, 100)};
  const auto rows = csv_rows(cmd_truncate(c));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][4] == "1/10");
  CHECK(rows[1][5] == "1");
  CHECK(rows[1][6] == "1/14");
  CHECK(rows[1][7] == "1/7");
  CHECK(rows[2][5] == "2");
  CHECK(rows[2][7] == "0/1");
  CHECK(std::stod(rows[2][12]) == 0.0);

  auto two = sweep({2}, {64});
  two.eps = {Rational(1, 100)};
  CHECK(csv_rows(cmd_truncate(two))[1][11] == "nan");
  CHECK_THROWS_AS(cmd_truncate(sweep({3}, {8})), ValidationError);
}

TEST_CASE("asymptote command") {
  const auto rows = csv_rows(cmd_asymptote(sweep({3}, {65536})));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][4] == "16384");
  CHECK(std::stod(rows[1][6]) == doctest::Approx(174.2).epsilon(1e-3));
  CHECK(std::stod(rows[1][7]) == doctest::Approx(7588).epsilon(1e-3));
  auto skew = sweep({3}, {16});
  skew.cut = Cut{1, 3};
  CHECK_THROWS_AS(cmd_asymptote(skew), ValidationError);
}

TEST_CASE("outputs are byte-stable") {
  auto c = sweep({2, 3}, {8, 64, 4096});
  c.eps = {Rational(1, 100)};
  c.svg_path = "x.svg";
  CHECK(cmd_table(sweep({2, 3}, {8, 64})) == cmd_table(sweep({2, 3}, {8, 64})));
  CHECK(cmd_measures(c) == cmd_measures(c));
  CHECK(cmd_scan(c).csv == cmd_scan(c).csv);
  CHECK(cmd_scan(c).svg == cmd_scan(c).svg);
  CHECK(cmd_truncate(c) == cmd_truncate(c));
  CHECK(cmd_asymptote(c) == cmd_asymptote(c));
}

TEST_CASE("verify on a small suite") {
  auto c = sweep({2, 3}, {4, 6});
  const auto report = cmd_verify(c);
  CHECK(report["schema"] == 1);
  CHECK(report["all_pass"] == true);
  CHECK(report["size_convention"] == "total");
  std::set<std::string> names;
  for (const auto& check : report["checks"]) {
    CHECK(check.contains("max_abs_deviation"));
    names.insert(check["check"].get<std::string>());
  }
  CHECK(names == std::set<std::string>{"tl_relations", "krylov_dimension", "density_matrix", "singlet_entropy",
                                       "log_negativity_match", "negativity_spectrum", "binegativity"});

  const auto faulty = cmd_verify(c, VerifyOptions{true});
  CHECK(faulty["all_pass"] == false);
  bool trace_failed = false;
  for (const auto& check : faulty["checks"])
    if (check["check"] == "density_matrix") trace_failed = trace_failed || !check["pass"].get<bool>();
  CHECK(trace_failed);

  auto with_trunc = sweep({3}, {8});
  with_trunc.eps = {Rational(1, 10)};
  bool saw_truncation = false;
  const auto truncated_report = cmd_verify(with_trunc);
  for (const auto& check : truncated_report["checks"])
    if (check["check"] == "truncation_trace_distance") {
      saw_truncation = true;
      CHECK(check["pass"] == true);
    }
  CHECK(saw_truncation);

  CHECK_THROWS_AS(cmd_verify(sweep({3}, {10})), ResourceError);
  CHECK(cmd_verify(sweep({3}, {4})).dump() == cmd_verify(sweep({3}, {4})).dump());
}
