#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "csv.hpp"
#include "doctest.h"
#include "svg.hpp"

using namespace dirac2d::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dirac2d_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int sign_changes(const CsvTable& table) {
  int changes = 0, last = 0;
  for (const auto& row : table.rows) {
    const double g = *parse_cell(row[1]);
    if (g == 0.0) continue;
    const int s = g > 0 ? 1 : -1;
    if (last && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(2.509755332493) == "2.50975533249");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(-3.0) == "-3");
  CHECK(format_cell(std::nullopt).empty());
}

TEST_CASE("csv round trip") {
  CsvTable t;
  t.comments = {"note"};
  t.header = {"x", "y"};
  t.rows = {{"1", "2.5"}, {"2", ""}, {"3", "a,b"}};
  const auto back = parse_csv(write_csv(t));
  CHECK(back.comments == t.comments);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK_THROWS(parse_csv("a,b\n1\n"));
  CHECK_THROWS(parse_cell("1.5x"));
}

TEST_CASE("solve: exit codes and rows") {
  auto ok = invoke({"solve", "--symmetry", "spin", "--M", "1", "--a", "1", "--b", "0", "--B", "0",
                    "--flux", "0", "--n", "0", "--m", "0"});
  CHECK(ok.code == 0);
  const auto table = parse_csv(ok.out);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.header.size() == 15);
  CHECK(std::abs(*parse_cell(table.rows[0][10]) - 2.5096) < 5e-4);

  CHECK(invoke({"solve", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--B", "0", "--emin",
                "-5", "--emax", "0.9"})
            .code == 1);
  const auto bad = invoke({"solve", "--symmetry", "spin", "--a=-1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--a") != std::string::npos);
  CHECK(invoke({"solve", "--symmetry", "spin", "--bogus", "1"}).code == 2);
  CHECK(invoke({"solve", "--M", "1"}).code == 2);
  CHECK(invoke({"solve", "--symmetry", "spinor"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("solve --verify adds oracle columns") {
  auto res = invoke({"solve", "--symmetry", "pseudospin", "--b", "1", "--B", "2", "--flux", "1",
                     "--n", "1", "--m", "-1", "--verify"});
  CHECK(res.code == 0);
  const auto table = parse_csv(res.out);
  REQUIRE(table.header.size() == 17);
  REQUIRE_FALSE(table.rows.empty());
  for (const auto& row : table.rows) CHECK(*parse_cell(row[16]) <= 1e-6);
}

TEST_CASE("sweep CSV shape and SVG determinism") {
  TempDir dir;
  const auto csv = dir.path / "s.csv";
  const auto svg = dir.path / "s.svg";
  const auto again = dir.path / "again.svg";
  auto res = invoke({"sweep", "--symmetry", "pseudospin", "--b", "1", "--flux", "1", "--vary", "B",
                     "--from", "0.5", "--to", "5", "--steps", "10", "--states", "0:0,0:1,0:-1",
                     "--out", csv.string(), "--plot", svg.string()});
  REQUIRE(res.code == 0);
  const std::string text = slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  const auto table = parse_csv(text);
  CHECK(table.header == std::vector<std::string>{"B", "E_0_0", "E_0_1", "E_0_-1"});
  for (const auto& row : table.rows) CHECK(row.size() == 4);

  const std::string plot = slurp(svg);
  CHECK(plot.find("<svg") != std::string::npos);
  CHECK(plot.find("n=0, m=-1") != std::string::npos);
  CHECK(std::count(plot.begin(), plot.end(), '\n') > 10);
  REQUIRE(invoke({"plot", "--in", csv.string(), "--out", again.string()}).code == 0);
  CHECK(slurp(again) == plot);

  CHECK(invoke({"sweep", "--symmetry", "spin", "--vary", "B", "--from", "0", "--to", "1",
                "--steps", "3", "--states", "0;1"})
            .code == 2);
  CHECK(invoke({"sweep", "--symmetry", "spin", "--vary", "E", "--from", "0", "--to", "1",
                "--steps", "3", "--states", "0:1"})
            .code == 2);
}

TEST_CASE("sweep presets") {
  auto res = invoke({"sweep", "--preset", "fig1"});
  REQUIRE(res.code == 0);
  const auto table = parse_csv(res.out);
  CHECK_FALSE(table.comments.empty());
  CHECK(table.rows.size() == 10);
  for (std::size_t col = 1; col < table.header.size(); ++col) {
    for (std::size_t row = 1; row < table.rows.size(); ++row)
      CHECK(*parse_cell(table.rows[row][col]) > *parse_cell(table.rows[row - 1][col]));
  }
  CHECK(invoke({"sweep", "--preset", "nope"}).code == 2);
}

TEST_CASE("empty cells break the polyline") {
  CsvTable t;
  t.header = {"B", "E_0_0"};
  t.rows = {{"0", "1"}, {"1", "2"}, {"2", ""}, {"3", "3"}, {"4", "4"}};
  const std::string svg = render_svg(chart_from_csv(t));
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1))
    ++count;
  CHECK(count == 2);
}

TEST_CASE("nice ticks") {
  CHECK(nice_ticks(0.0, 1.0) == std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8, 1.0});
  const auto t = nice_ticks(4.3, 5.9);
  CHECK(t.front() >= 4.3);
  CHECK(t.back() <= 5.9);
}

TEST_CASE("wavefunction output") {
  TempDir dir;
  const auto path = dir.path / "w.csv";
  auto ground = invoke({"wavefunction", "--symmetry", "spin", "--b", "1", "--B", "0.5", "--flux",
                        "0.6", "--n", "0", "--m", "1", "--samples", "1000"});
  REQUIRE(ground.code == 0);
  const auto t0 = parse_csv(ground.out);
  CHECK(t0.header == std::vector<std::string>{"r", "g", "g_squared"});
  CHECK(t0.rows.size() == 1000);
  CHECK(t0.comments.size() >= 2);
  double integral = 0.0;
  double prev_r = 0.0, prev_g2 = 0.0;
  for (const auto& row : t0.rows) {
    const double r = *parse_cell(row[0]);
    CHECK(*parse_cell(row[1]) >= 0.0);
    const double g2 = *parse_cell(row[2]);
    integral += 0.5 * (g2 + prev_g2) * (r - prev_r);
    prev_r = r;
    prev_g2 = g2;
  }
  CHECK(std::abs(integral - 1.0) < 1e-3);

  auto excited = invoke({"wavefunction", "--symmetry", "pseudospin", "--b", "1", "--B", "2",
                         "--flux", "1", "--n", "2", "--m", "0", "--out", path.string()});
  REQUIRE(excited.code == 0);
  CHECK(sign_changes(parse_csv(slurp(path))) == 2);

  CHECK(invoke({"wavefunction", "--symmetry", "pseudospin", "--B", "0", "--emin", "-5", "--emax",
                "0.9"})
            .code == 1);
  CHECK(invoke({"wavefunction", "--symmetry", "spin", "--samples", "1"}).code == 2);
}

TEST_CASE("nu-trace") {
  auto res = invoke({"nu-trace", "--symmetry", "pseudospin", "--M", "1", "--a", "1", "--b", "1",
                     "--B", "2", "--flux", "3.141592653589793", "--m", "1", "--E", "2"});
  CHECK(res.code == 0);
  CHECK(res.out.find("selected branch 1: pi(s) = 2 - 1.73205080757 s") != std::string::npos);
  CHECK(res.out.find("tau(s) = 5 - 3.46410161514 s") != std::string::npos);
  CHECK(res.out.find("<- bound state") == std::string::npos);

  // Harmonic spin ground state: the n = 0 row is the hit.
  auto hit = invoke({"nu-trace", "--symmetry", "spin", "--b", "0", "--m", "0", "--E",
                     "2.50975533249"});
  CHECK(hit.code == 0);
  CHECK(hit.out.find("0,0,") != std::string::npos);
  CHECK(hit.out.find("<- bound state") != std::string::npos);

  auto bad = invoke({"nu-trace", "--symmetry", "pseudospin", "--B", "0", "--E", "0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("p2") != std::string::npos);
  CHECK(invoke({"nu-trace", "--symmetry", "spin"}).code == 2);
}

TEST_CASE("config file precedence: flags > file > defaults") {
  TempDir dir;
  const auto cfg = dir.path / "run.json";
  std::ofstream(cfg) << R"({"symmetry": "spin", "a": 2, "b": 0, "n": 0, "m": 0})";
  auto from_file = invoke({"solve", "--config", cfg.string()});
  REQUIRE(from_file.code == 0);
  // a = 2, b = 0: (E-1)^2 (E+1) = 16 at E = 3
  CHECK(parse_csv(from_file.out).rows[0][4] == "2");
  CHECK(std::abs(*parse_cell(parse_csv(from_file.out).rows[0][10]) - 3.0) < 1e-9);

  auto flag_wins = invoke({"solve", "--config", cfg.string(), "--a", "1"});
  REQUIRE(flag_wins.code == 0);
  CHECK(parse_csv(flag_wins.out).rows[0][4] == "1");
  CHECK(parse_csv(flag_wins.out).rows[0][3] == "1");  // M from defaults

  const auto junk = dir.path / "junk.json";
  std::ofstream(junk) << R"({"symmetry": "spin", "alpha": 1})";
  CHECK(invoke({"solve", "--config", junk.string()}).code == 2);
  CHECK(invoke({"solve", "--config", (dir.path / "missing.json").string()}).code == 2);
}
