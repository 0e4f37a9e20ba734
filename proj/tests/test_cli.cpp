#include "catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "csv_read.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tpro_run");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tpro::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("tpro_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == tpro::kExitUsage);
  CHECK(run({"no-such-command"}).code == tpro::kExitUsage);
  CHECK(run({"dynamics", "--area-pi", "abc"}).code == tpro::kExitUsage);
  CHECK(run({"dynamics", "--integrator", "euler"}).code == tpro::kExitUsage);
  CHECK(run({"--help"}).code == tpro::kExitOk);
}

TEST_CASE("config errors map to their exit codes", "[cli]") {
  TempDir dir("config");
  CHECK(run({"dynamics", "--config", dir.file("missing.ini")}).code == 10);
  std::ofstream(dir.file("bad.ini")) << "[sqd]\ngamma21 = -1\n";
  const Run r = run({"dynamics", "--config", dir.file("bad.ini")});
  CHECK(r.code == 13);
  CHECK(r.err.find("gamma21") != std::string::npos);
  std::ofstream(dir.file("unknown.ini")) << "[sqd]\nfoo = 1\n";
  CHECK(run({"dynamics", "--config", dir.file("unknown.ini")}).code == 12);
  std::ofstream(dir.file("syntax.ini")) << "[pulse]\narea_pi = nine\n";
  CHECK(run({"dynamics", "--config", dir.file("syntax.ini")}).code == 11);
  CHECK(run({"dynamics", "--isolated", "--d-nm", "20"}).code == 14);
  CHECK(run({"hybrid-info", "--isolated"}).code == 14);
  CHECK(run({"sweep-area-distance", "--isolated", "--output-dir", dir.path.string()}).code == 14);
}

TEST_CASE("dynamics writes a trajectory", "[cli]") {
  TempDir dir("dynamics");
  const Run r = run({"dynamics", "--area-pi", "2", "--output-dir", dir.path.string()});
  REQUIRE(r.code == 0);
  const CsvTable t = read_csv_file(dir.file("dynamics.csv"));
  CHECK(t.columns.size() == 11);
  CHECK(t.rows.size() > 100);
  CHECK(t.meta.at("area_pi") == "2");
  CHECK(t.meta.at("isolated") == "false");
  const Run custom = run({"dynamics", "--isolated", "--out", dir.file("iso.csv")});
  REQUIRE(custom.code == 0);
  CHECK(read_csv_file(dir.file("iso.csv")).meta.at("isolated") == "true");
}

TEST_CASE("sweeps write CSV and manifest, serial equals parallel", "[cli]") {
  TempDir dir("sweep");
  const std::vector<std::string> axes{"--area-lo", "0.5", "--area-hi", "3", "--area-n", "4",
                                      "--t0-lo",   "0.5", "--t0-hi",   "1", "--t0-n",   "2"};
  std::vector<std::string> a{"sweep-area-duration", "--out", dir.file("par.csv"), "--workers", "3"};
  std::vector<std::string> b{"sweep-area-duration", "--out", dir.file("ser.csv"), "--serial"};
  a.insert(a.end(), axes.begin(), axes.end());
  b.insert(b.end(), axes.begin(), axes.end());
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(slurp(dir.file("par.csv")) == slurp(dir.file("ser.csv")));
  const CsvTable t = read_csv_file(dir.file("par.csv"));
  CHECK(t.rows.size() == 8);
  const auto j = nlohmann::json::parse(slurp(dir.file("par.json")));
  CHECK(j.at("workers") == 3);
  CHECK(j.at("config_hash") == t.meta.at("config_hash"));
}

TEST_CASE("partial sweep failure exits with 2", "[cli]") {
  TempDir dir("partial");
  std::ofstream(dir.file("coarse.ini")) << "[integrator]\nmode = rk4\ndt_ps = 0.5\n";
  const Run r = run({"sweep-area-duration", "--config", dir.file("coarse.ini"), "--output-dir",
                     dir.path.string(), "--area-n", "2", "--t0-n", "2", "--t0-lo", "0.5",
                     "--t0-hi", "1"});
  CHECK(r.code == tpro::kExitPartialSweep);
  const CsvTable t = read_csv_file(dir.file("sweep_area_duration.csv"));
  CHECK(t.meta.at("failed_points") != "0");
}

TEST_CASE("area scan, adiabatic, materials, hybrid-info", "[cli]") {
  TempDir dir("misc");
  const std::string d = dir.path.string();
  CHECK(run({"area-scan", "--isolated", "--area-lo", "0", "--area-hi", "2", "--area-n", "3",
             "--output-dir", d})
            .code == 0);
  CHECK(read_csv_file(dir.file("area_scan.csv")).rows.size() == 3);

  REQUIRE(run({"adiabatic", "--t0-n", "5", "--output-dir", d}).code == 0);
  const CsvTable iso = read_csv_file(dir.file("adiabatic_isolated.csv"));
  const CsvTable hyb = read_csv_file(dir.file("adiabatic_hybrid.csv"));
  REQUIRE(iso.rows.size() == 5);
  CHECK(iso.num(2, "area_first_max_rad") > hyb.num(2, "area_first_max_rad"));

  const Run m = run({"materials", "--n", "11", "--output-dir", d});
  REQUIRE(m.code == 0);
  CHECK(m.out.find("2.33") != std::string::npos);
  CHECK(read_csv_file(dir.file("materials.csv")).rows.size() == 11);

  const Run h = run({"hybrid-info", "--d-nm", "25"});
  REQUIRE(h.code == 0);
  CHECK(h.out.find("distance_nm      25") != std::string::npos);
  CHECK(h.out.find("G3") != std::string::npos);
}

TEST_CASE("unwritable output is an IO error", "[cli]") {
  TempDir dir("io");
  std::ofstream(dir.file("blocker")) << "x";
  CHECK(run({"dynamics", "--out", dir.file("blocker") + "/dyn.csv"}).code == tpro::kExitIo);
}
