#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "superlab/cli.hpp"
#include "superlab/plot.hpp"

using namespace superlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("superlab_cli_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("format_number") {
  CHECK(plot::format_number(0.1, 12) == "0.1");
  CHECK(plot::format_number(-0.0, 12) == "0");
  CHECK(plot::format_number(1.0 / 3.0, 4) == "0.3333");
  CHECK(plot::format_number(std::nan(""), 6) == "nan");
  CHECK(plot::format_number(-std::numeric_limits<double>::infinity(), 6) == "-inf");
}

TEST_CASE("csv writer") {
  plot::Table t;
  t.add_column("a", {1.0, 2.5});
  t.add_column("b", {-0.125, 3.0});
  std::ostringstream s;
  plot::write_csv(s, t, 12);
  CHECK(s.str() == "a,b\n1,-0.125\n2.5,3\n");
  CHECK_THROWS_AS(t.add_column("c", {1.0}), std::invalid_argument);
}

TEST_CASE("check-identity") {
  const auto ok = run({"check-identity", "--N", "8", "--a", "1.3", "--b", "-0.7"});
  CHECK(ok.code == cli::kSuccess);
  CHECK(ok.out.find("result = PASS") != std::string::npos);
  const auto zero = run({"check-identity", "--N", "1", "--a", "0", "--b", "0"});
  CHECK(zero.code == cli::kSuccess);
  CHECK(zero.out.find("abs_err = 0") != std::string::npos);
  CHECK(run({"check-identity", "--a", "1"}).code == cli::kUsageError);
}

TEST_CASE("sum-rule") {
  const auto osc = run({"sum-rule", "--basis", "oscillator", "--N", "5", "--g", "0.5"});
  CHECK(osc.code == cli::kSuccess);
  CHECK(osc.out.find("result = PASS") != std::string::npos);
  CHECK(run({"sum-rule", "--basis", "plane_wave", "--a", "2"}).code == cli::kSuccess);
  CHECK(run({"sum-rule", "--basis", "legendre", "--c", "0.5"}).code == cli::kSuccess);
  CHECK(run({"sum-rule", "--basis", "fourier"}).code == cli::kUsageError);
  // An impossible tolerance is a check failure, not an error.
  CHECK(run({"sum-rule", "--basis", "legendre", "--c", "0.5", "--tol", "1e-30"}).code == cli::kCheckFailed);
}

TEST_CASE("computation commands print csv") {
  const auto le = run({"local-energy", "--N", "10", "--points", "5"});
  CHECK(le.code == cli::kSuccess);
  auto ls = lines(le.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "x,Re_E,Im_E,super,singular");

  const auto se = run({"spectral-energy", "--N", "0"});
  CHECK(se.code == cli::kSuccess);
  CHECK(lines(se.out)[1] == "0,0.5,inverse_N2,0.5,0.5");

  const auto we = run({"windowed-energy", "--N", "500", "--L", "2"});
  CHECK(we.code == cli::kSuccess);
  const auto row = split(lines(we.out)[1]);
  CHECK(std::stod(row[3]) == doctest::Approx(2.0).epsilon(0.05));

  const auto wide = run({"windowed-energy", "--N", "4", "--L", "30"});
  CHECK(wide.code == cli::kSuccess);
  CHECK(wide.err.find("outside the mimicry regime") != std::string::npos);

  const auto te = run({"time-evolve", "--N", "20", "--points", "3", "--precision", "5"});
  CHECK(te.code == cli::kSuccess);
  CHECK(lines(te.out).size() == 4);

  const auto ro = run({"rotor", "--c", "0.5", "--points", "4"});
  CHECK(ro.code == cli::kSuccess);
  CHECK(lines(ro.out)[0] == "theta,local_L2,local_L2_generic,super,singular,time_phase_Re,time_phase_Im");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"fig", "--id", "9"}).code == cli::kUsageError);
  CHECK(run({"local-energy", "--bogus", "1"}).code == cli::kUsageError);
  CHECK(run({"local-energy", "--g", "-1"}).code == cli::kUsageError);
  CHECK(run({"local-energy", "--scaling", "inverse_N3"}).code == cli::kUsageError);
  CHECK(run({"windowed-energy", "--L", "0"}).code == cli::kUsageError);
  const auto num = run({"windowed-energy", "--N", "100", "--scaling", "inverse_N", "--L", "20", "--quad-order", "1"});
  CHECK(num.code == cli::kNumericalError);
  CHECK(num.err.find("order doubling") != std::string::npos);
  CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("quadrature density from the environment") {
  ::setenv("SUPERLAB_QUAD_ORDER", "zero", 1);
  CHECK(run({"windowed-energy", "--N", "50"}).code == cli::kUsageError);
  // The flag wins over the environment.
  CHECK(run({"windowed-energy", "--N", "50", "--quad-order", "100"}).code == cli::kSuccess);
  ::setenv("SUPERLAB_QUAD_ORDER", "1", 1);
  CHECK(run({"windowed-energy", "--N", "100", "--scaling", "inverse_N", "--L", "20"}).code == cli::kNumericalError);
  ::unsetenv("SUPERLAB_QUAD_ORDER");
  CHECK(run({"windowed-energy", "--N", "100", "--scaling", "inverse_N", "--L", "20"}).code == cli::kSuccess);
}

TEST_CASE("config file precedence") {
  TempDir dir("config");
  const fs::path cfg = dir.path / "run.cfg";
  std::ofstream(cfg) << "# spectral energy run\nN = 7\ng = 0.3\nprecision = 6\n";
  const auto from_file = run({"spectral-energy", "--config", cfg.string()});
  CHECK(from_file.code == cli::kSuccess);
  CHECK(lines(from_file.out)[1].rfind("7,0.3,", 0) == 0);
  const auto overridden = run({"spectral-energy", "--config", cfg.string(), "--N", "9"});
  CHECK(lines(overridden.out)[1].rfind("9,0.3,", 0) == 0);

  std::ofstream(cfg) << "N = 7\ncolour = blue\n";
  CHECK(run({"spectral-energy", "--config", cfg.string()}).code == cli::kUsageError);
  std::ofstream(cfg) << "just a line\n";
  CHECK(run({"spectral-energy", "--config", cfg.string()}).code == cli::kUsageError);
  CHECK(run({"spectral-energy", "--config", (dir.path / "missing.cfg").string()}).code == cli::kUsageError);
}

TEST_CASE("fig 3 csv respects the bound") {
  TempDir dir("fig3");
  REQUIRE(run({"fig", "--id", "3", "--output-dir", dir.path.string()}).code == cli::kSuccess);
  const auto ls = lines(slurp(dir.path / "fig3.csv"));
  REQUIRE(ls.size() > 1);
  CHECK(ls[0] == "N,g,E_N_over_hw0,bound");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    REQUIRE(f.size() == 4);
    CHECK(std::stod(f[2]) <= std::stod(f[3]));
  }
  CHECK(fs::exists(dir.path / "fig3.meta.txt"));
}

TEST_CASE("fig 5 svg has both traces and the reference") {
  TempDir dir("fig5");
  REQUIRE(run({"fig", "--id", "5", "--format", "svg", "--output-dir", dir.path.string()}).code == cli::kSuccess);
  CHECK_FALSE(fs::exists(dir.path / "fig5.csv"));
  for (const char* panel : {"fig5_re.svg", "fig5_im.svg"}) {
    const std::string svg = slurp(dir.path / panel);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("exp(-i t/(2g^2))") != std::string::npos);
    CHECK(svg.find("N = 1000") != std::string::npos);
    std::size_t count = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
    CHECK(count == 6);
  }
}

TEST_CASE("fig 1 twice is byte-identical") {
  TempDir a("fig1a"), b("fig1b");
  REQUIRE(run({"fig", "--id", "1", "--format", "both", "--output-dir", a.path.string()}).code == cli::kSuccess);
  REQUIRE(run({"fig", "--id", "1", "--format", "both", "--output-dir", b.path.string()}).code == cli::kSuccess);
  for (const char* f : {"fig1.csv", "fig1.svg", "fig1.meta.txt"}) {
    REQUIRE(fs::exists(a.path / f));
    CHECK(slurp(a.path / f) == slurp(b.path / f));
  }
  const std::string csv = slurp(a.path / "fig1.csv");
  CHECK(csv.back() == '\n');
  CHECK(lines(csv)[0] == "x,ReE_over_Emax_N2,ReE_over_Emax_N5,ReE_over_Emax_N10,ReE_over_Emax_N20,ReE_over_Emax_N50");
  CHECK(lines(csv).size() == 802);
}

TEST_CASE("figure overrides") {
  TempDir dir("over");
  REQUIRE(run({"fig", "--id", "2", "--N-ladder", "3,7", "--points", "11", "--output-dir", dir.path.string()}).code ==
          cli::kSuccess);
  const auto ls = lines(slurp(dir.path / "fig2.csv"));
  CHECK(ls.size() == 12);
  CHECK(ls[0].find("N3") != std::string::npos);
  CHECK(ls[0].find("N7") != std::string::npos);
  CHECK(run({"fig", "--id", "2", "--N-ladder", "0", "--output-dir", dir.path.string()}).code == cli::kUsageError);
  CHECK(run({"fig", "--id", "5", "--scaling", "inverse_N", "--output-dir", dir.path.string()}).code ==
        cli::kUsageError);
  REQUIRE(run({"fig", "--id", "4", "--N-max", "20", "--g-values", "0.5", "--precision", "4", "--output-dir",
               dir.path.string()})
              .code == cli::kSuccess);
  const auto f4 = lines(slurp(dir.path / "fig4.csv"));
  CHECK(f4.size() == 21);
  CHECK(f4[0] == "N,g,E_mim_over_hw0,asymptote,log_postselection_prob,mimicry_regime");
}
