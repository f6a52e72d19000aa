#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spdc/cli.hpp"

using spdc::run_cli;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

double csv_tail_comment(const std::string& text) {
  auto pos = text.find("# out_of_window_mass:");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + 21));
}

const std::string kSixPs = std::string(SPDC_TEST_DATA_DIR) + "/sixps.pump";

}  // namespace

TEST_CASE("amplitude command prints the expected row") {
  auto r = run({"amplitude", "--pump", "0,0", "--signal", "1,0", "--idler",
                "-1,0", "--gamma", "1"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);  // header + one row
  CHECK(rows[0][0] == "gamma_s");
  REQUIRE(rows[1].size() == 8);
  CHECK(std::stod(rows[1][5]) == doctest::Approx(0.3546154).epsilon(1e-6));
  CHECK(std::stod(rows[1][6]) == 0.0);
}

TEST_CASE("spectrum command rows sum to one with the tail") {
  auto r = run({"spectrum", "--pump", "0,0", "--gamma", "1", "--ell-window",
                "-15:15"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 32);  // header + 31 data rows
  double total = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][7]);
  total += csv_tail_comment(r.out);
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("repeated invocations are byte-identical") {
  std::vector<std::string> args{"scan",        "--pump",   "2,0",
                                "--gamma-grid", "0.5:1.5:0.5", "--ell-window",
                                "-5:5"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("json format mirrors the csv schema") {
  auto r = run({"amplitude", "--pump", "1,0", "--signal", "1,0", "--idler",
                "0,0", "--gamma", "1", "--format", "json"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["rows"].size() == 1);
  auto& row = doc["rows"][0];
  CHECK(row["gamma_s"] == 1.0);
  CHECK(row["ell_s"] == 1);
  CHECK(std::abs(row["amplitude_re"].get<double>() - 0.3546154) < 1e-6);
  CHECK(row["probability"].get<double>() ==
        doctest::Approx(0.3546154 * 0.3546154).epsilon(1e-5));
}

TEST_CASE("decompose lists the LG coefficients of a singularity pump") {
  auto r = run({"decompose", "--pump-file", kSixPs});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 8);  // header + ell = 0..6
  double power = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) power += std::stod(rows[i][7]);
  CHECK(power == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("equalize finds both equalization roots") {
  auto r = run({"equalize", "--pump-file", kSixPs, "--states",
                "0,0;1,1;2,2;3,3", "--interval", "0.3:3", "--mode", "paper"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 9);  // header + 2 roots x 4 states
  double root1 = std::stod(rows[1][0]);
  double root2 = std::stod(rows[5][0]);
  CHECK(std::abs(root1 - 0.5) < 0.05);
  CHECK(std::abs(root2 - 1.0) < 0.05);
  CHECK(r.err.find("root") != std::string::npos);
}

TEST_CASE("equalize trace emits the scan grid") {
  auto r = run({"equalize", "--pump-file", kSixPs, "--states", "0,0;1,1",
                "--interval", "0.5:0.6", "--step", "0.05", "--trace"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 1 + 3 * 2);  // header + 3 grid points x 2 states
}

TEST_CASE("pump waist rescales amplitudes but not probabilities") {
  auto at1 = run({"scan", "--pump", "2,0", "--gamma-grid", "1:2:1",
                  "--ell-window", "-4:4"});
  auto at2 = run({"scan", "--pump", "2,0", "--gamma-grid", "1:2:1",
                  "--ell-window", "-4:4", "--wp", "2"});
  auto r1 = csv_rows(at1.out), r2 = csv_rows(at2.out);
  REQUIRE(r1.size() == r2.size());
  for (size_t i = 1; i < r1.size(); ++i) {
    CHECK(std::stod(r1[i][7]) == doctest::Approx(std::stod(r2[i][7])).epsilon(1e-12));
    CHECK(std::stod(r1[i][5]) ==
          doctest::Approx(2.0 * std::stod(r2[i][5])).epsilon(1e-12));
  }
}

TEST_CASE("spectrum emits one row per ell and family pair") {
  auto r = run({"spectrum", "--pump", "0,0", "--gamma", "1", "--p-family",
                "0,0;1,1", "--ell-window", "-5:5"});
  CHECK(r.code == 0);
  CHECK(csv_rows(r.out).size() == 1 + 11 * 2);
}

TEST_CASE("equalize tolerance override is honored") {
  auto r = run({"equalize", "--pump-file", kSixPs, "--states",
                "0,0;1,1;2,2;3,3", "--interval", "0.3:3", "--mode", "paper",
                "--tolerance", "1e-9"});
  CHECK(r.code == 0);
  CHECK(csv_rows(r.out).size() == 1);  // header only: no roots survive
  CHECK(r.err.find("no equalization roots") != std::string::npos);
}

TEST_CASE("oracle-check agrees and exits zero") {
  auto r = run({"oracle-check", "--pump", "2,1", "--signal", "1,1", "--idler",
                "1,0", "--gamma-s", "1.5", "--gamma-i", "0.8"});
  CHECK(r.code == 0);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);  // header + closed + quadrature
  CHECK(std::stod(rows[1][5]) ==
        doctest::Approx(std::stod(rows[2][5])).epsilon(1e-8));
}

TEST_CASE("oracle-check 2d method handles OAM-violating triples") {
  auto r = run({"oracle-check", "--pump", "0,0", "--signal", "1,0", "--idler",
                "1,0", "--method", "2d"});
  CHECK(r.code == 0);
}

TEST_CASE("output lands in --out file") {
  std::string path = "cli_out_test.csv";
  auto r = run({"amplitude", "--pump", "0,0", "--signal", "0,0", "--idler",
                "0,0", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str().find("0.531923") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"amplitude", "--pump", "0,0"}).code == 1);  // missing modes
  CHECK(run({"bogus-command"}).code == 1);
  CHECK(run({"amplitude", "--pump", "0,0", "--signal", "x,y", "--idler",
             "0,0"}).code == 1);
  CHECK(run({"spectrum", "--pump-file", "/does/not/exist", }).code == 1);
  CHECK(run({"spectrum", "--pump", "0,0", "--pump-file", kSixPs}).code == 1);
  CHECK(run({"equalize", "--pump", "0,0", "--states", "0,0", "--interval",
             "0.5:1"}).code == 1);  // single state
  CHECK(run({"decompose", "--pump", "1,0"}).code == 1);  // not singularities
}

TEST_CASE("numeric failures exit 2") {
  // gamma = 20 spreads the spectrum past the support cap.
  auto r = run({"spectrum", "--pump", "0,0", "--gamma", "20"});
  CHECK(r.code == 2);
  CHECK(r.err.find("numeric error") != std::string::npos);
}

TEST_CASE("help exits zero") {
  CHECK(run({"--help"}).code == 0);
}
