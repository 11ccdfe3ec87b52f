#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrod/cli.hpp"
#include "qrod/errors.hpp"
#include "qrod/io.hpp"

using namespace qrod;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  Run r;
  r.code = cli::run(args, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qrod_test_" + name);
}

// csv section `name` -> rows of cells
std::vector<std::vector<std::string>> csv_section(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  bool inside = false, header = false;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      inside = line.substr(2) == name;
      header = inside;
      continue;
    }
    if (!inside || line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("number formatting") {
    CHECK(io::format_number(1.0 / 3.0, 5) == "0.33333");
    CHECK(io::format_number(9420.4321, 6) == "9420.43");
    CHECK(io::format_number(-0.0, 6) == "0");
    CHECK(io::format_number(std::nan(""), 6) == "nan");
    CHECK(io::format_number(-INFINITY, 6) == "-inf");
    CHECK_THROWS_AS((void)io::format_number(1.0, 2), InvalidParameter);
    CHECK_THROWS_AS((void)io::format_number(1.0, 16), InvalidParameter);
  }

  TEST_CASE("tables render to matching CSV and JSON") {
    io::Table t{"demo", {"n", "x", "label"}, {}};
    t.add_row({1LL, 0.125, std::string("a")});
    t.add_row({2LL, std::nan(""), std::string("b")});
    CHECK_THROWS_AS(t.add_row({1LL}), InvalidParameter);
    const std::string csv = io::to_csv({t}, 6);
    CHECK(csv == "n,x,label\n1,0.125,a\n2,nan,b\n");
    const auto j = io::to_json({{"k", 1}}, {t}, 6);
    CHECK(j["results"]["demo"][0]["x"] == 0.125);
    CHECK(j["results"]["demo"][1]["x"].is_null());
    CHECK(j["provenance"]["version"] == std::string(io::kVersion));
    CHECK(j.begin().key() == "config");
    io::Table u{"other", {"y"}, {}};
    u.add_row({1.5});
    const std::string two = io::to_csv({t, u}, 6);
    CHECK(two.find("# demo\n") == 0);
    CHECK(two.find("\n\n# other\ny\n1.5\n") != std::string::npos);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("free rotor levels through the front end") {
    const Run r = run({"spectrum", "--B", "0", "--n-levels", "3", "--grid-n", "1001"});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = json::parse(r.out);
    const auto& lv = j["results"]["levels"];
    REQUIRE(lv.size() == 6);
    for (int k = 0; k < 6; ++k) CHECK(lv[k]["energy"].get<double>() == doctest::Approx((k + 1) * (k + 1)).epsilon(1e-8));
    CHECK(j["config"]["B"] == 0.0);
  }

  TEST_CASE("CSV and JSON carry identical numbers") {
    const std::vector<std::string> base{"wkb-compare", "--B", "1e4", "--n-levels", "30", "--precision", "8"};
    auto a = base, b = base;
    a.insert(a.end(), {"--format", "json"});
    b.insert(b.end(), {"--format", "csv"});
    const Run rj = run(a), rc = run(b);
    REQUIRE(rj.code == 0);
    REQUIRE(rc.code == 0);
    const auto j = json::parse(rj.out);
    for (const auto& [name, rows] : j["results"].items()) {
      const auto csv = csv_section(rc.out, name);
      REQUIRE(csv.size() == rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t c = 0;
        for (const auto& [col, v] : rows[i].items()) {
          INFO(name << " row " << i << " column " << col);
          if (v.is_number()) CHECK(std::stod(csv[i][c]) == v.get<double>());
          else if (v.is_null()) CHECK(csv[i][c] == "nan");
          else CHECK(csv[i][c] == v.get<std::string>());
          ++c;
        }
      }
    }
  }

  TEST_CASE("reruns are byte-identical") {
    const std::vector<std::string> args{"summit", "--B", "1e4", "--eps-steps", "5"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"spectrum", "--bogus"}).code == cli::kExitConfig);
    CHECK(run({"nonsense"}).code == cli::kExitConfig);
    CHECK(run({}).code == cli::kExitConfig);
    CHECK(run({"spectrum"}).code == cli::kExitConfig);
    CHECK(run({"spectrum", "--B", "1e4", "--rod"}).code == cli::kExitConfig);
    CHECK(run({"airy", "--precision", "20"}).code == cli::kExitConfig);
    CHECK(run({"airy", "--format", "xml"}).code == cli::kExitConfig);
    CHECK(run({"spectrum", "--B", "1e4", "--grid-n", "100"}).code == cli::kExitConfig);
    CHECK(run({"evolve", "--B", "1e4", "--method", "magic"}).code == cli::kExitConfig);
    const Run numerical = run({"spectrum", "--B", "1e4", "--n-levels", "15", "--grid-n", "301"});
    CHECK(numerical.code == cli::kExitNumerical);
    CHECK(numerical.err.find("numerical failure") != std::string::npos);
  }

  TEST_CASE("help for every subcommand") {
    const Run top = run({"--help"});
    CHECK(top.code == cli::kExitOk);
    for (const char* sub : {"spectrum", "wkb-compare", "summit", "airy", "fall-time", "evolve", "slant"}) {
      INFO(sub);
      CHECK(top.out.find(sub) != std::string::npos);
      CHECK(run({sub, "--help"}).code == cli::kExitOk);
    }
  }

  TEST_CASE("config file with flag precedence") {
    const auto path = temp_file("config.json");
    {
      std::ofstream f(path);
      f << R"({"B": 0, "n_levels": 2, "grid_n": 1001, "precision": 6})";
    }
    const Run a = run({"spectrum", "--config", path.string()});
    REQUIRE(a.code == 0);
    auto j = json::parse(a.out);
    CHECK(j["results"]["levels"].size() == 4);
    CHECK(j["config"]["precision"] == 6);
    const Run b = run({"spectrum", "--config", path.string(), "--n-levels", "3", "--B", "100"});
    REQUIRE(b.code == 0);
    j = json::parse(b.out);
    CHECK(j["results"]["levels"].size() == 6);
    CHECK(j["config"]["B"] == 100.0);
    {
      std::ofstream f(path);
      f << R"({"B": "heavy"})";
    }
    CHECK(run({"spectrum", "--config", path.string()}).code == cli::kExitConfig);
    {
      std::ofstream f(path);
      f << "{not json";
    }
    CHECK(run({"spectrum", "--config", path.string()}).code == cli::kExitConfig);
    CHECK(run({"spectrum", "--config", temp_file("missing.json").string()}).code == cli::kExitConfig);
    std::filesystem::remove(path);
  }

  TEST_CASE("output file") {
    const auto path = temp_file("airy.csv");
    const Run r = run({"airy", "--format", "csv", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,lambda_wkb,lambda_airy,E_wkb,E_airy");
    std::filesystem::remove(path);
  }

  TEST_CASE("reference rod fall times") {
    const Run r = run({"fall-time", "--rod"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    double tq = 0, tqp = 0, spread = 0;
    for (const auto& row : j["results"]["fall_times"]) {
      if (row["quantity"] == "t_Q") tq = row["seconds"];
      if (row["quantity"] == "t_Q_prime") tqp = row["seconds"];
      if (row["quantity"] == "t_spread") spread = row["seconds"];
    }
    CHECK(std::abs(tq - 3.0) < 0.5);
    CHECK(std::abs(tqp - 3.0) < 0.5);
    CHECK(spread == doctest::Approx(200.0 / std::sqrt(147.15)).epsilon(1e-6));
  }

  TEST_CASE("slant sweep through the front end") {
    const Run r = run({"slant", "--B", "1e4", "--doublet", "5", "--tilt-min", "1e-4", "--tilt-max", "1e-4",
                       "--tilt-steps", "1", "--oracle"});
    REQUIRE(r.code == 0);
    const auto row = json::parse(r.out)["results"]["sweep"][0];
    CHECK(row["E1"].get<double>() == doctest::Approx(row["E1_grid"].get<double>()).epsilon(1e-6));
    CHECK(std::max(row["P_left_state1"].get<double>(), 1.0 - row["P_left_state1"].get<double>()) > 0.99);
  }
}
