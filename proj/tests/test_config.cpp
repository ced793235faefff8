#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "prox/config.hpp"
#include "prox/errors.hpp"

using namespace prox;

TEST_CASE("minimal config picks up the documented defaults") {
  const RunConfig cfg = parse_config("experiment = example1\nalgorithm = alg31\n");
  CHECK(cfg.experiment == "example1");
  CHECK(cfg.algorithm == "alg31");
  CHECK(cfg.theta == "paper_quintic");
  CHECK(cfg.alpha == "paper");
  CHECK(cfg.beta == "harmonic");
  CHECK(cfg.tau == "gamma");
  CHECK(cfg.lambda == "gamma");
  CHECK(cfg.gibali_cap == 0.5);
  CHECK(cfg.gibali_eps_scale == 1.0);
  CHECK(cfg.stop == "residual_step");
  CHECK(cfg.tol == 1e-4);
  CHECK(cfg.max_iter == 100000);
  CHECK(cfg.seed == 1);
  CHECK(cfg.out.empty());
  CHECK_FALSE(cfg.gamma_override.has_value());
  CHECK(cfg.epsilon == 1e-8);
  CHECK(cfg.backend == "parallel");
  CHECK_FALSE(cfg.trace_timing);
  CHECK(cfg.grid_n == 1024);
  CHECK(cfg.case_id == 1);
  CHECK(cfg.cs_m == 64);
  CHECK(cfg.cs_n == 256);
  CHECK(cfg.cs_k == 40);
  CHECK(cfg.noise_sigma == 0.0);
  CHECK_FALSE(cfg.x0.has_value());
}

TEST_CASE("comments blank lines and spacing are tolerated") {
  const RunConfig cfg = parse_config(
      "# run description\n"
      "\n"
      "experiment = example2   # trailing comment\n"
      "   algorithm=alg32\n"
      "grid_n   =   64\n"
      "case = 3\n"
      "tol = 1e-5\n");
  CHECK(cfg.experiment == "example2");
  CHECK(cfg.algorithm == "alg32");
  CHECK(cfg.grid_n == 64);
  CHECK(cfg.case_id == 3);
  CHECK(cfg.tol == 1e-5);
}

TEST_CASE("errors name the offending line and key") {
  try {
    parse_config("experiment = example1\nalgorithm = alg31\ntau = const:-1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 3);
    CHECK(e.key == "tau");
  }
  try {
    parse_config("experiment = example1\nalgorithm = alg31\nthetta = paper_quintic\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 3);
    CHECK(e.key == "thetta");
    CHECK(std::string(e.what()).find("thetta") != std::string::npos);
  }
  try {
    parse_config("experiment = example1\nexperiment = cs\nalgorithm = alg31\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line == 2);
    CHECK(e.key == "experiment");
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("experiment example1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("= example1\n"), ConfigError);
}

TEST_CASE("required keys and batch invariants are enforced") {
  CHECK_THROWS_AS(parse_config("algorithm = alg31\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example3\nalgorithm = alg31\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg99\n"), ConfigError);
  // cs shape constraints
  CHECK_THROWS_AS(
      parse_config("experiment = cs\nalgorithm = alg31\nm = 256\nn = 256\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("experiment = cs\nalgorithm = alg31\nk = 256\nn = 256\nm = 64\n"), ConfigError);
  CHECK_NOTHROW(parse_config("experiment = cs\nalgorithm = alg31\nm = 64\nn = 256\nk = 40\n"));
}

TEST_CASE("schedule strings are admitted per key") {
  CHECK_NOTHROW(parse_config("experiment = example1\nalgorithm = alg31\ntheta = const:0.5\n"));
  CHECK_NOTHROW(parse_config("experiment = example1\nalgorithm = alg31\ntheta = tabulated:0.1,0.2\n"));
  CHECK_NOTHROW(parse_config("experiment = example1\nalgorithm = alg32\nbeta = scaled:0.001\n"));
  CHECK_NOTHROW(parse_config("experiment = example1\nalgorithm = alg31\ntau = const:1.5\n"));
  // family names are not interchangeable across roles
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntheta = paper\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg32\nalpha = harmonic\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg32\nalpha = gamma\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg32\ntheta = scaled:0.1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntau = harmonic\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntau = tabulated:1,0\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntheta = quintic\n"),
                  ConfigError);
}

TEST_CASE("value range validation") {
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntol = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntol = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\nmax_iter = 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\nmax_iter = -4\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ngibali_cap = 1\n"),
                  ConfigError);
  CHECK_NOTHROW(parse_config("experiment = example1\nalgorithm = alg31\ngibali_cap = 0\n"));
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ntrace_timing = yes\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example2\nalgorithm = alg31\ngrid_n = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example2\nalgorithm = alg31\ncase = 4\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\ngamma_override = 0\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\nx0 = \n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = example1\nalgorithm = alg31\nx0 = 1,q\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = cs\nalgorithm = alg31\nnoise_sigma = -1\n"),
                  ConfigError);
}

TEST_CASE("custom problems demand the pieces they need") {
  // zero B has no finite cocoercivity constant of its own
  CHECK_THROWS_AS(parse_config("experiment = custom\nalgorithm = alg31\n"), ConfigError);
  CHECK_NOTHROW(parse_config("experiment = custom\nalgorithm = alg31\ngamma_override = 2\n"));
  CHECK_THROWS_AS(
      parse_config("experiment = custom\nalgorithm = alg31\nb_kind = least_squares_gradient\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_config("experiment = custom\nalgorithm = alg31\n"
                               "b_kind = scalar_affine\nb_coeff = 0\nb_shift = 1,1\n"),
                  ConfigError);
  CHECK_NOTHROW(parse_config("experiment = custom\nalgorithm = alg31\n"
                             "b_kind = scalar_affine\nb_coeff = 0.5\n"));
  CHECK_THROWS_AS(parse_config("experiment = custom\nalgorithm = alg31\ngamma_override = 2\n"
                               "a_kind = normal_cone_affine_set\n"),
                  ConfigError);
  CHECK_NOTHROW(parse_config("experiment = custom\nalgorithm = alg31\ngamma_override = 2\n"
                             "a_kind = normal_cone_affine_set\naffine_normal = 1,1\n"));
}

TEST_CASE("serialize parse round trip is the identity") {
  RunConfig a = parse_config("experiment = example1\nalgorithm = alg31\n");
  CHECK(parse_config(serialize_config(a)) == a);

  RunConfig b = parse_config(
      "experiment = cs\nalgorithm = alg32\nm = 32\nn = 128\nk = 10\nseed = 3\n"
      "beta = scaled:0.001\ntol = 1e-6\nmax_iter = 5000\nnoise_sigma = 0.01\n"
      "backend = serial\ntrace_timing = true\nout = /tmp/somewhere\n");
  CHECK(parse_config(serialize_config(b)) == b);

  RunConfig c = parse_config(
      "experiment = custom\nalgorithm = inertial_prox_gibali\ndim = 2\n"
      "a_kind = normal_cone_affine_set\naffine_normal = 1,0\naffine_offset = 1\n"
      "b_kind = scalar_affine\nb_coeff = 0.5\nb_shift = -1,2\n"
      "x0 = 5,7\nx1 = 5,7\nmin_norm = 1,0\ngibali_cap = 0.25\n"
      "gibali_eps_scale = 2\nlambda = const:0.9\nstop = error_to_reference\ntol = 1e-3\n");
  CHECK(parse_config(serialize_config(c)) == c);

  RunConfig d = parse_config(
      "experiment = example2\nalgorithm = alg32\ngrid_n = 64\ncase = 2\n"
      "theta = tabulated:0.1,0.2,0.3\nalpha = const:0.45\ntau = const:1.25\n"
      "epsilon = 1e-6\nseed = 11\n");
  CHECK(parse_config(serialize_config(d)) == d);

  // serialization is stable: serializing twice gives identical text
  CHECK(serialize_config(b) == serialize_config(parse_config(serialize_config(b))));
}

TEST_CASE("config files parse like inline text") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "prox_test_config";
  fs::create_directories(dir);
  const fs::path path = dir / "run.cfg";
  std::ofstream(path) << "experiment = example1\nalgorithm = alg31\nseed = 5\n";
  const RunConfig cfg = parse_config_file(path.string());
  CHECK(cfg.seed == 5);
  CHECK_THROWS_AS(parse_config_file((dir / "missing.cfg").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("schedule factory resolves names") {
  CHECK(make_schedule("gamma", 3.0)(1) == 3.0);
  CHECK(make_schedule("paper_quintic", 0.0)(1) == 0.46875);
  CHECK(make_schedule("paper", 0.0)(1) == doctest::Approx(0.41666666666666663).epsilon(1e-16));
  CHECK(make_schedule("harmonic", 0.0)(1) == 0.5);
  CHECK(make_schedule("scaled:0.5", 0.0)(1) == 0.25);
  CHECK(make_schedule("const:0.125", 0.0)(7) == 0.125);
  const Schedule tab = make_schedule("tabulated:0.5,0.75", 0.0);
  CHECK(tab(2) == 0.75);
  CHECK(tab.horizon() == 2);
  CHECK_THROWS_AS(make_schedule("nope", 1.0), InvalidArgument);
}
