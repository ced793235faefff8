#pragma once

#include <string>

#include "prox/config.hpp"
#include "prox/experiments.hpp"
#include "prox/solvers.hpp"

namespace prox {

/* Problem plus starting points, assembled from a RunConfig. */
struct PreparedRun {
  Problem problem;
  Vector x0;
  Vector x1;
  std::optional<CSInstance> cs;  // present for the cs experiment
};

PreparedRun prepare_run(const RunConfig& cfg);

/* Runs the configured algorithm on an already-prepared problem. */
RunRecord run_prepared(const RunConfig& cfg, const PreparedRun& prep);

struct ExecResult {
  int exit_code = 1;  // 0 converged, 2 iteration budget exhausted, 1 error
  std::string out_dir;
  std::string message;     // diagnostic on failure
  RunRecord record;        // possibly partial on numerical failure
  bool have_record = false;
};

/*
 * Full pipeline: prepare, run, and write artifacts (trace.csv, record.json,
 * plot.dat; for cs also metrics.json, reconstruction.csv, instance/).
 * The output directory resolves as: explicit config value, else $PROX_OUT,
 * else ./out. Never throws; failures are reported in the result.
 */
ExecResult execute(const RunConfig& cfg);

std::string resolve_out_dir(const RunConfig& cfg);

}  // namespace prox
