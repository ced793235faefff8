#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

std::string g_prox_bin;

struct Cmd {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Cmd sh(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "prox_test_cli_io";
  fs::create_directories(dir);
  const fs::path so = dir / ("stdout." + std::to_string(++counter));
  const fs::path se = dir / ("stderr." + std::to_string(counter));
  const std::string full =
      "'" + g_prox_bin + "' " + args + " >'" + so.string() + "' 2>'" + se.string() + "'";
  const int rc = std::system(full.c_str());
  Cmd c;
  c.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  c.out = slurp(so);
  c.err = slurp(se);
  return c;
}

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "prox_test_cli" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_cfg(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("run executes a config and reports the outcome") {
  const fs::path dir = fresh_dir("run_ok");
  const fs::path cfg = write_cfg(dir, "ex1.cfg",
                                 "experiment = example1\nalgorithm = alg31\nout = " +
                                     (dir / "out").string() + "\n");
  const Cmd c = sh("run '" + cfg.string() + "'");
  CHECK(c.code == 0);
  CHECK(c.out.find(": tolerance_met after 2 iterations") != std::string::npos);
  CHECK(c.out.find("final residual 0") != std::string::npos);
  CHECK(c.out.find("-> " + (dir / "out").string()) != std::string::npos);
  CHECK(fs::exists(dir / "out" / "trace.csv"));
  CHECK(fs::exists(dir / "out" / "record.json"));
  CHECK(fs::exists(dir / "out" / "plot.dat"));
}

TEST_CASE("iteration cap maps to exit code 2") {
  const fs::path dir = fresh_dir("run_cap");
  const fs::path cfg = write_cfg(dir, "cap.cfg",
                                 "experiment = example1\nalgorithm = alg31\nmax_iter = 1\nout = " +
                                     (dir / "out").string() + "\n");
  const Cmd c = sh("run '" + cfg.string() + "'");
  CHECK(c.code == 2);
  CHECK(c.out.find("max_iter after 1 iterations") != std::string::npos);
}

TEST_CASE("broken config surfaces as exit 1 with a parse message") {
  const fs::path dir = fresh_dir("run_bad");
  const fs::path cfg = write_cfg(dir, "bad.cfg", "experiment = example1\nthetta = 1\n");
  const Cmd c = sh("run '" + cfg.string() + "'");
  CHECK(c.code == 1);
  CHECK(c.err.find("thetta") != std::string::npos);
  const Cmd missing = sh("run '" + (dir / "nope.cfg").string() + "'");
  CHECK(missing.code != 0);
}

TEST_CASE("validate prints the canonical form") {
  const fs::path dir = fresh_dir("validate");
  const fs::path good = write_cfg(dir, "good.cfg",
                                  "experiment = cs\nalgorithm = alg32\nm = 32\nn = 128\nk = 10\n");
  const Cmd c = sh("validate '" + good.string() + "'");
  CHECK(c.code == 0);
  CHECK(c.out.find(": valid\n") != std::string::npos);
  CHECK(c.out.find("experiment = cs\n") != std::string::npos);
  CHECK(c.out.find("beta = harmonic\n") != std::string::npos);
  CHECK(c.out.find("m = 32\n") != std::string::npos);

  const fs::path bad = write_cfg(dir, "bad.cfg",
                                 "experiment = example1\nalgorithm = alg31\ntau = const:-2\n");
  const Cmd b = sh("validate '" + bad.string() + "'");
  CHECK(b.code == 1);
  CHECK(b.err.find("tau") != std::string::npos);
  CHECK(b.out.find("valid") == std::string::npos);
}

TEST_CASE("repeated runs emit byte-identical traces") {
  const fs::path dir = fresh_dir("determinism");
  const std::string base =
      "experiment = cs\nalgorithm = alg32\nm = 16\nn = 64\nk = 5\nseed = 3\ntol = 1e-4\n";
  const fs::path cfg_a = write_cfg(dir, "a.cfg", base + "out = " + (dir / "out_a").string() + "\n");
  const fs::path cfg_b = write_cfg(dir, "b.cfg", base + "out = " + (dir / "out_b").string() + "\n");
  CHECK(sh("run '" + cfg_a.string() + "'").code == 0);
  CHECK(sh("run '" + cfg_b.string() + "'").code == 0);
  const std::string ta = slurp(dir / "out_a" / "trace.csv");
  CHECK_FALSE(ta.empty());
  CHECK(ta == slurp(dir / "out_b" / "trace.csv"));
  CHECK(slurp(dir / "out_a" / "plot.dat") == slurp(dir / "out_b" / "plot.dat"));
}

TEST_CASE("seed override lands in the run record") {
  const fs::path dir = fresh_dir("seed");
  const fs::path cfg = write_cfg(dir, "s.cfg",
                                 "experiment = cs\nalgorithm = alg31\nm = 16\nn = 64\nk = 5\n"
                                 "out = " + (dir / "out").string() + "\n");
  CHECK(sh("run --seed 9 '" + cfg.string() + "'").code == 0);
  nlohmann::json j;
  std::ifstream(dir / "out" / "record.json") >> j;
  CHECK(j["config_echo"]["seed"] == "9");
  nlohmann::json meta;
  std::ifstream(dir / "out" / "instance" / "meta.json") >> meta;
  CHECK(meta["seed"] == 9);
}

TEST_CASE("multiple configs fan out into per-stem directories") {
  const fs::path dir = fresh_dir("multi");
  const fs::path cfg_a = write_cfg(dir, "fast.cfg", "experiment = example1\nalgorithm = alg31\n");
  const fs::path cfg_b = write_cfg(dir, "capped.cfg",
                                   "experiment = example1\nalgorithm = alg31\nmax_iter = 1\n");
  const Cmd c = sh("run --jobs 2 --out '" + (dir / "batch").string() + "' '" + cfg_a.string() +
                   "' '" + cfg_b.string() + "'");
  // worst outcome wins: the capped run exits 2
  CHECK(c.code == 2);
  CHECK(fs::exists(dir / "batch" / "fast" / "trace.csv"));
  CHECK(fs::exists(dir / "batch" / "capped" / "trace.csv"));
  CHECK(c.out.find("fast.cfg") != std::string::npos);
  CHECK(c.out.find("capped.cfg") != std::string::npos);
}

TEST_CASE("summary table commands write their reports") {
  const fs::path t1 = fresh_dir("table1");
  const Cmd c1 = sh("table1 --out '" + t1.string() + "'");
  CHECK(c1.code == 0);
  const std::string md1 = slurp(t1 / "table1.md");
  CHECK(md1.find("| tol |") != std::string::npos);
  CHECK(md1.find("1e-03") != std::string::npos);
  CHECK(md1.find("1e-05") != std::string::npos);
  // three tolerance rows plus two header lines
  CHECK(std::count(md1.begin(), md1.end(), '\n') == 5);

  const fs::path t2 = fresh_dir("table2");
  const Cmd c2 = sh("table2 --out '" + t2.string() + "'");
  CHECK(c2.code == 0);
  const std::string md2 = slurp(t2 / "table2.md");
  CHECK(md2.find("K=40, m=64, n=256") != std::string::npos);
  CHECK(md2.find("K=60, m=128, n=512") != std::string::npos);
  CHECK(fs::exists(t2 / "runs" / "alg31_m64" / "trace.csv"));
  CHECK(fs::exists(t2 / "runs" / "alg32_m128" / "metrics.json"));
}

int main(int argc, char** argv) {
  std::vector<char*> args;
  for (int i = 0; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--prox-bin=", 0) == 0) {
      g_prox_bin = a.substr(11);
      continue;
    }
    args.push_back(argv[i]);
  }
  if (g_prox_bin.empty())
    if (const char* env = std::getenv("PROX_BIN")) g_prox_bin = env;
  if (g_prox_bin.empty()) {
    std::fprintf(stderr, "usage: test_cli --prox-bin=<path> (or PROX_BIN env)\n");
    return 1;
  }
  doctest::Context ctx(static_cast<int>(args.size()), args.data());
  return ctx.run();
}
