#include "doctest.h"

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "../tools/cli_app.hpp"
#include "tvlm/csv.hpp"
#include "tvlm/models.hpp"
#include "tvlm/simulate.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv = {"tvlm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return tvlm::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("tvlm_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("simulate writes a reproducible CSV with the x header") {
  TempDir tmp;
  const auto out1 = (tmp.path / "a.csv").string();
  const auto out2 = (tmp.path / "b.csv").string();
  CHECK(run_cli({"simulate", "--model", "arfima", "--memory", "cosine", "--phi",
                 "0.8", "--T", "512", "--seed", "5", "--out", out1}) == 0);
  CHECK(run_cli({"simulate", "--model", "arfima", "--memory", "cosine", "--phi",
                 "0.8", "--T", "512", "--seed", "5", "--out", out2}) == 0);
  const std::string a = slurp(out1);
  CHECK(a == slurp(out2));  // byte-identical across runs
  CHECK(a.rfind("x\n", 0) == 0);
  CHECK(tvlm::read_series_csv(out1).size() == 512);
}

TEST_CASE("scalogram emits the long (u, j, sigma2) format") {
  TempDir tmp;
  const auto in = (tmp.path / "in.csv").string();
  const auto out = (tmp.path / "sc.csv").string();
  REQUIRE(run_cli({"simulate", "--T", "1024", "--seed", "3", "--phi", "0.8",
                   "--out", in}) == 0);
  const auto cwd = fs::current_path();
  fs::current_path(tmp.path);  // --export-taps writes into the working dir
  const int rc = run_cli({"scalogram", "--in", in, "--scales", "1..3",
                          "--bandwidth", "0.25", "--grid", "9", "--out", out,
                          "--export-taps"});
  fs::current_path(cwd);
  CHECK(rc == 0);
  CHECK(fs::exists(tmp.path / "taps_j1.csv"));
  CHECK(tvlm::read_series_csv((tmp.path / "taps_j3.csv").string()).size() == 22);
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  CHECK(header == "u,j,sigma2");
  int rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 9 * 3);
}

TEST_CASE("estimate on a synthetic fixture of length 4470 with b=0.23") {
  // matches the real-data configuration: T=4470, b=0.23, L in {1,2,3}
  TempDir tmp;
  const auto m = tvlm::TvArfimaModel::stationary(0.25, {0.4}, {}, 1.0);
  tvlm::SimConfig cfg;
  cfg.T = 4470;
  cfg.seed = 9;
  const auto path = tvlm::simulate(m, cfg);
  const auto in = (tmp.path / "fixture.csv").string();
  tvlm::write_series_csv(in, path.values, "x");
  for (int L = 1; L <= 3; ++L) {
    const auto out = (tmp.path / ("est" + std::to_string(L) + ".csv")).string();
    CHECK(run_cli({"estimate", "--in", in, "--scales", std::to_string(L) + ":2",
                   "--bandwidth", "0.23", "--grid", "25", "--out", out}) == 0);
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    CHECK(header == "u,d_hat,se,ci_lo,ci_hi,flags");
    int rows = 0, ok_rows = 0;
    std::string line;
    while (std::getline(f, line)) {
      ++rows;
      if (line.find(",ok") != std::string::npos) ++ok_rows;
    }
    CHECK(rows == 25);
    CHECK(ok_rows > 10);
  }
}

TEST_CASE("estimate: empty file is a data error; constant series flags all points") {
  TempDir tmp;
  const auto empty = (tmp.path / "empty.csv").string();
  std::ofstream(empty).close();
  CHECK(run_cli({"estimate", "--in", empty, "--out",
                 (tmp.path / "x.csv").string()}) == 3);

  const auto constant = (tmp.path / "constant.csv").string();
  {
    std::ofstream f(constant);
    f << "x\n";
    for (int i = 0; i < 2048; ++i) f << "3.25\n";
  }
  const auto out = (tmp.path / "const_est.csv").string();
  CHECK(run_cli({"estimate", "--in", constant, "--scales", "1:2", "--grid", "9",
                 "--out", out}) == 0);  // zero exit with warnings
  std::ifstream f(out);
  std::string line;
  std::getline(f, line);
  int zeroed = 0, flagged = 0, rows = 0;
  while (std::getline(f, line)) {
    ++rows;
    if (line.find("zero-scalogram") != std::string::npos) ++zeroed;
    if (line.find(",ok") == std::string::npos) ++flagged;
  }
  CHECK(rows == 9);
  CHECK(flagged == rows);  // every point flagged (boundary or zero)
  CHECK(zeroed >= 7);      // all interior points carry the zero flag
}

TEST_CASE("bad configuration exits with code 2") {
  TempDir tmp;
  const auto in = (tmp.path / "in.csv").string();
  REQUIRE(run_cli({"simulate", "--T", "256", "--out", in}) == 0);
  CHECK(run_cli({"estimate", "--in", in, "--weights", "nonsense", "--out",
                 (tmp.path / "o.csv").string()}) == 2);
  CHECK(run_cli({"estimate", "--in", in, "--scales", "banana", "--out",
                 (tmp.path / "o.csv").string()}) == 2);
  CHECK(run_cli({"simulate", "--model", "arfima", "--phi", "1.2", "--out",
                 (tmp.path / "o.csv").string()}) == 2);  // non-causal
  CHECK(run_cli({"estimate", "--in", in, "--scales", "9:2", "--out",
                 (tmp.path / "o.csv").string()}) == 3);  // too short for scales
}

TEST_CASE("config file provides defaults, flags override") {
  TempDir tmp;
  const auto in = (tmp.path / "in.csv").string();
  REQUIRE(run_cli({"simulate", "--T", "2048", "--seed", "2", "--phi", "0.5",
                   "--out", in}) == 0);
  const auto cfgpath = (tmp.path / "run.cfg").string();
  {
    std::ofstream f(cfgpath);
    f << "# defaults for this analysis\n";
    f << "weights.kind = recursive\n";
    f << "weights.bandwidth = 0.2\n";
    f << "estimate.scales = 1:2\n";
    f << "grid = 7\n";
  }
  const auto out1 = (tmp.path / "rec.csv").string();
  CHECK(run_cli({"--config", cfgpath, "estimate", "--in", in, "--out", out1}) == 0);
  std::ifstream f1(out1);
  std::string line;
  int rows = 0;
  std::getline(f1, line);
  while (std::getline(f1, line)) ++rows;
  CHECK(rows == 7);  // grid came from the config

  // flag overrides the config grid
  const auto out2 = (tmp.path / "rec2.csv").string();
  CHECK(run_cli({"--config", cfgpath, "estimate", "--in", in, "--grid", "5",
                 "--out", out2}) == 0);
  std::ifstream f2(out2);
  rows = 0;
  std::getline(f2, line);
  while (std::getline(f2, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("asymptotics emits CSV and parseable JSON") {
  TempDir tmp;
  const auto csvp = (tmp.path / "asym.csv").string();
  CHECK(run_cli({"asymptotics", "--d-min", "0.1", "--d-max", "0.2", "--d-step",
                 "0.1", "--ell", "1", "--out", csvp}) == 0);
  const std::string body = slurp(csvp);
  CHECK(body.find("quantity,d,i,ip,value") != std::string::npos);
  CHECK(body.find("K,") != std::string::npos);
  CHECK(body.find("Sigma,") != std::string::npos);

  const auto jsonp = (tmp.path / "asym.json").string();
  CHECK(run_cli({"asymptotics", "--d-min", "0.1", "--d-max", "0.1", "--d-step",
                 "0.1", "--ell", "1", "--format", "json", "--out", jsonp}) == 0);
  const std::string js = slurp(jsonp);
  CHECK(js.find("\"K\"") != std::string::npos);
  CHECK(js.find("\"Sigma\"") != std::string::npos);
}

TEST_CASE("advise prints the rate-balanced tuning") {
  CHECK(run_cli({"advise", "--T", "1048576", "--d-prior", "0", "--beta", "2"}) == 0);
  CHECK(run_cli({"advise", "--T", "8"}) == 2);
}

TEST_CASE("reproduce-sec51 writes deterministic outputs") {
  TempDir tmp;
  const auto dir1 = (tmp.path / "r1").string();
  const auto dir2 = (tmp.path / "r2").string();
  CHECK(run_cli({"reproduce-sec51", "--seeds", "2", "--T", "1024", "--grid", "21",
                 "--out-dir", dir1}) == 0);
  CHECK(run_cli({"reproduce-sec51", "--seeds", "2", "--T", "1024", "--grid", "21",
                 "--out-dir", dir2}) == 0);
  for (const char* name : {"figure_kernel.csv", "figure_recursive.csv", "summary.csv"}) {
    CHECK(fs::exists(fs::path(dir1) / name));
    CHECK(slurp(fs::path(dir1) / name) == slurp(fs::path(dir2) / name));
  }
  const std::string sum = slurp(fs::path(dir1) / "summary.csv");
  CHECK(sum.find("mae,kernel,2,") != std::string::npos);
  CHECK(sum.find("sigma2_mc_variance,recursive,5,") != std::string::npos);
}
