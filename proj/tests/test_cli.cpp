#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "betafreq/run_config.hpp"

using namespace betafreq;
namespace fs = std::filesystem;

namespace {

std::string bin_path() {
  const char* p = std::getenv("BETAFREQ_BIN");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  std::string cmd = bin_path() + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("betafreq_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config round-trip: serialize then parse is the identity") {
  RunConfig c;
  c.command = "expand";
  c.beta_spec = "pg:3";
  c.algo = "tuned";
  c.p = "13/20";
  c.x = "7/11";
  c.n = 12345;
  c.seed = 99;
  c.only = {1, 4};
  c.threads = 3;
  RunConfig back = RunConfig::from_json(c.to_json());
  CHECK(back == c);
  CHECK(back.to_json() == c.to_json());
}

TEST_CASE("expand writes a digit stream and a frequency summary") {
  TempDir tmp;
  fs::path digits = tmp.path / "digits.txt";
  fs::path summary = tmp.path / "summary.json";
  int rc = run("expand --beta pg:2 --algo tuned --p 0.5 --x 0.37 --n 2000 --seed 7 --out " +
               digits.string() + " --summary " + summary.string());
  CHECK(rc == 0);
  std::string d = slurp(digits);
  CHECK(d.size() == 2001);  // 2000 digits + newline
  CHECK(d.find_first_not_of("01\n") == std::string::npos);
  std::string s = slurp(summary);
  CHECK(s.find("\"p_target\": \"1/2\"") != std::string::npos);
  CHECK(s.find("\"abs_error\"") != std::string::npos);
  CHECK(s.find("\"freq\"") != std::string::npos);
  CHECK(s.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("expand runs are byte-identical for identical config and seed") {
  TempDir tmp;
  fs::path d1 = tmp.path / "a.txt", d2 = tmp.path / "b.txt";
  fs::path s1 = tmp.path / "a.json", s2 = tmp.path / "b.json";
  std::string base = "expand --beta 2.5 --algo balanced --n 3000 --seed 42 ";
  CHECK(run(base + "--out " + d1.string() + " --summary " + s1.string()) == 0);
  CHECK(run(base + "--out " + d2.string() + " --summary " + s2.string()) == 0);
  CHECK(slurp(d1) == slurp(d2));
  CHECK(slurp(s1) == slurp(s2));
}

TEST_CASE("density emits the declared CSV header and masses") {
  TempDir tmp;
  fs::path csv = tmp.path / "hist.csv";
  fs::path summary = tmp.path / "hist.json";
  int rc = run("density --m 2 --p 0.5 --steps 20000 --burn-in 100 --bins 32 --seed 7 --out " +
               csv.string() + " --summary " + summary.string());
  CHECK(rc == 0);
  std::string c = slurp(csv);
  CHECK(c.rfind("bin_lo,bin_hi,empirical_mass,analytic_mass\n", 0) == 0);
  size_t rows = 0;
  for (char ch : c) rows += ch == '\n';
  CHECK(rows == 33);  // header + 32 bins
  std::string s = slurp(summary);
  CHECK(s.find("\"l1\"") != std::string::npos);
}

TEST_CASE("enumerate lists prefixes, one per line") {
  TempDir tmp;
  fs::path out = tmp.path / "prefixes.txt";
  int rc = run("enumerate --beta pg:2 --x 1 --depth 2 --out " + out.string());
  CHECK(rc == 0);
  CHECK(slurp(out) == "01\n10\n11\n");
}

TEST_CASE("variants emits count streams") {
  TempDir tmp;
  fs::path out = tmp.path / "variants.txt";
  fs::path summary = tmp.path / "variants.json";
  int rc = run("variants --beta pg:2 --algo tuned --p 0.5 --x 1 --count 3 --n 50 --out " +
               out.string() + " --summary " + summary.string());
  CHECK(rc == 0);
  std::string v = slurp(out);
  size_t rows = 0;
  for (char ch : v) rows += ch == '\n';
  CHECK(rows == 3);
  CHECK(slurp(summary).find("switch_index") != std::string::npos);
}

TEST_CASE("cutpoints prints exact values for rational bases") {
  TempDir tmp;
  fs::path out = tmp.path / "cuts.json";
  int rc = run("cutpoints --beta 2.5 --out " + out.string());
  CHECK(rc == 0);
  std::string s = slurp(out);
  CHECK(s.find("(7)/15") != std::string::npos);
  CHECK(s.find("symmetry_residual_256bit") != std::string::npos);
}

TEST_CASE("identities reports the exact orbit checks") {
  TempDir tmp;
  fs::path out = tmp.path / "ident.json";
  int rc = run("identities --beta pg:3 --p 0.5 --out " + out.string());
  CHECK(rc == 0);
  std::string s = slurp(out);
  CHECK(s.find("\"ok\": true") != std::string::npos);
  CHECK(s.find("T^m(b) = T^m(b+1)") != std::string::npos);
}

TEST_CASE("error paths map to the documented exit codes") {
  CHECK(run("expand --beta 0.9 --x 0 --n 10") == 2);       // invalid spec
  CHECK(run("expand --beta pg:2 --algo tuned --p 0.9 --x 0.1 --n 10") == 2);  // p out of range
  CHECK(run("cutpoints --beta pg:2") == 2);                 // beta <= 2 unsupported
  CHECK(run("expand --beta 2.5 --algo greedy --x 9 --n 10") == 2);  // x outside I
  CHECK(run("expand --no-such-flag") == 2);                 // config parse error
  // start point exactly on a cut: the ball pipeline restarts, then gives up
  CHECK(run("expand --beta 2.5 --algo balanced --x 7/15 --n 5 --arith ball") == 3);
}
