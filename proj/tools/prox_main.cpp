#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "prox/runner.hpp"

namespace {

struct RunOutcome {
  std::string path;
  prox::ExecResult result;
};

int severity(int code) { return code == 1 ? 2 : code == 2 ? 1 : 0; }

std::string fmt_seconds(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", ms / 1000.0);
  return buf;
}

int cmd_run(const std::vector<std::string>& configs, const std::string& out_override,
            std::int64_t seed_override, unsigned jobs) {
  std::vector<prox::RunConfig> cfgs;
  for (const std::string& path : configs) {
    prox::RunConfig cfg;
    try {
      cfg = prox::parse_config_file(path);
    } catch (const std::exception& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return 1;
    }
    if (!out_override.empty()) {
      cfg.out = out_override;
      if (configs.size() > 1)
        cfg.out += "/" + std::filesystem::path(path).stem().string();
    }
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    cfgs.push_back(std::move(cfg));
  }

  std::vector<RunOutcome> outcomes(cfgs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfgs.size()) return;
      outcomes[i].path = configs[i];
      outcomes[i].result = prox::execute(cfgs[i]);
    }
  };
  if (jobs <= 1 || cfgs.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(cfgs.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  int worst = 0;
  for (const RunOutcome& o : outcomes) {
    const prox::ExecResult& r = o.result;
    if (r.have_record) {
      std::cout << o.path << ": " << prox::to_string(r.record.stop_reason) << " after "
                << r.record.rows.size() << " iterations";
      if (!r.record.rows.empty()) {
        std::cout << ", final residual " << r.record.rows.back().residual;
        if (std::isfinite(r.record.rows.back().error))
          std::cout << ", final error " << r.record.rows.back().error;
      }
      std::cout << " -> " << r.out_dir << "\n";
    }
    if (r.exit_code == 1) std::cerr << o.path << ": error: " << r.message << "\n";
    if (severity(r.exit_code) > severity(worst)) worst = r.exit_code;
  }
  return worst;
}

int cmd_validate(const std::string& path) {
  try {
    const prox::RunConfig cfg = prox::parse_config_file(path);
    std::cout << path << ": valid\n" << prox::serialize_config(cfg);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 1;
  }
}

int cmd_table1(const std::string& out_dir) {
  prox::RunConfig base;
  base.experiment = "example2";
  base.algorithm = "alg31";
  base.case_id = 2;
  base.stop = "residual_step";
  base.max_iter = 10000;
  base.out = out_dir;

  std::string md = "| tol | alg31 iterations | alg31 seconds | alg32 iterations | alg32 seconds |\n"
                   "|-----|------------------|---------------|------------------|---------------|\n";
  for (double tol : {1e-3, 1e-4, 1e-5}) {
    std::size_t it31 = 0, it32 = 0;
    double s31 = 0.0, s32 = 0.0;
    for (const char* alg : {"alg31", "alg32"}) {
      prox::RunConfig cfg = base;
      cfg.algorithm = alg;
      cfg.tol = tol;
      cfg.out = out_dir + "/runs/" + alg + "_tol" + std::to_string(static_cast<int>(-std::log10(tol)));
      const prox::ExecResult r = prox::execute(cfg);
      if (r.exit_code == 1) {
        std::cerr << "table1: " << alg << " failed: " << r.message << "\n";
        return 1;
      }
      const double ms = r.record.rows.empty() ? 0.0 : r.record.rows.back().elapsed_ms;
      if (std::string(alg) == "alg31") {
        it31 = r.record.rows.size();
        s31 = ms;
      } else {
        it32 = r.record.rows.size();
        s32 = ms;
      }
    }
    char tolbuf[32];
    std::snprintf(tolbuf, sizeof tolbuf, "%.0e", tol);
    md += "| " + std::string(tolbuf) + " | " + std::to_string(it31) + " | " + fmt_seconds(s31) +
          " | " + std::to_string(it32) + " | " + fmt_seconds(s32) + " |\n";
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/table1.md");
  if (!out) {
    std::cerr << "table1: cannot write " << out_dir << "/table1.md\n";
    return 1;
  }
  out << md;
  std::cout << md;
  return 0;
}

int cmd_table2(const std::string& out_dir, std::uint64_t seed) {
  struct Size {
    std::size_t m, n, k;
  };
  std::string md = "| instance | alg31 iterations | alg31 seconds | alg32 iterations | alg32 seconds |\n"
                   "|----------|------------------|---------------|------------------|---------------|\n";
  for (const Size sz : {Size{64, 256, 40}, Size{128, 512, 60}}) {
    std::size_t it31 = 0, it32 = 0;
    double s31 = 0.0, s32 = 0.0;
    for (const char* alg : {"alg31", "alg32"}) {
      prox::RunConfig cfg;
      cfg.experiment = "cs";
      cfg.algorithm = alg;
      cfg.cs_m = sz.m;
      cfg.cs_n = sz.n;
      cfg.cs_k = sz.k;
      cfg.beta = "scaled:0.001";
      cfg.stop = "residual_step";
      cfg.tol = 1e-4;
      cfg.max_iter = 5000;
      cfg.seed = seed;
      cfg.out = out_dir + "/runs/" + alg + "_m" + std::to_string(sz.m);
      const prox::ExecResult r = prox::execute(cfg);
      if (r.exit_code == 1) {
        std::cerr << "table2: " << alg << " failed: " << r.message << "\n";
        return 1;
      }
      const double ms = r.record.rows.empty() ? 0.0 : r.record.rows.back().elapsed_ms;
      if (std::string(alg) == "alg31") {
        it31 = r.record.rows.size();
        s31 = ms;
      } else {
        it32 = r.record.rows.size();
        s32 = ms;
      }
    }
    md += "| K=" + std::to_string(sz.k) + ", m=" + std::to_string(sz.m) + ", n=" +
          std::to_string(sz.n) + " | " + std::to_string(it31) + " | " + fmt_seconds(s31) + " | " +
          std::to_string(it32) + " | " + fmt_seconds(s32) + " |\n";
  }
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/table2.md");
  if (!out) {
    std::cerr << "table2: cannot write " << out_dir << "/table2.md\n";
    return 1;
  }
  out << md;
  std::cout << md;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward-backward splitting solvers for 0 in (A+B)x"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Execute one or more run configs");
  std::vector<std::string> run_configs;
  std::string run_out;
  std::int64_t run_seed = -1;
  unsigned run_jobs = 1;
  run->add_option("config", run_configs, "Config file(s)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output directory (overrides config)");
  run->add_option("--seed", run_seed, "Seed override")->check(CLI::NonNegativeNumber);
  run->add_option("--jobs", run_jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Parse and validate a config");
  std::string validate_path;
  validate->add_option("config", validate_path, "Config file")->required();

  auto* table1 = app.add_subcommand("table1", "Function-space experiment iteration counts");
  std::string t1_out = "out/table1";
  table1->add_option("--out", t1_out, "Output directory");

  auto* table2 = app.add_subcommand("table2", "Sparse-recovery experiment iteration counts");
  std::string t2_out = "out/table2";
  std::uint64_t t2_seed = 3;
  table2->add_option("--out", t2_out, "Output directory");
  table2->add_option("--seed", t2_seed, "Instance seed");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_configs, run_out, run_seed, run_jobs);
  if (validate->parsed()) return cmd_validate(validate_path);
  if (table1->parsed()) return cmd_table1(t1_out);
  if (table2->parsed()) return cmd_table2(t2_out, t2_seed);
  return 1;
}
