#include "prox/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "prox/kernels.hpp"

namespace prox {

namespace {

Vector vector_from_config(const Space& s, const std::vector<double>& vals) {
  if (vals.size() != s.dim)
    throw InvalidArgument("config vector has length " + std::to_string(vals.size()) +
                          ", problem dimension is " + std::to_string(s.dim));
  return make_vector(s, vals);
}

Operator build_custom_a(const RunConfig& cfg, const Space& s) {
  if (cfg.a_kind == "zero") return Operator::zero(1.0);
  if (cfg.a_kind == "scalar_affine")
    return Operator::scalar_affine(
        cfg.a_coeff, cfg.a_shift ? vector_from_config(s, *cfg.a_shift) : zeros(s));
  if (cfg.a_kind == "normal_cone_l1_ball") return Operator::normal_cone_l1_ball(cfg.l1_radius);
  if (cfg.a_kind == "normal_cone_affine_set")
    return Operator::normal_cone_affine_set(vector_from_config(s, *cfg.affine_normal),
                                            cfg.affine_offset);
  throw InvalidArgument("unknown a_kind '" + cfg.a_kind + "'");
}

Operator build_custom_b(const RunConfig& cfg, const Space& s) {
  if (cfg.b_kind == "zero") return Operator::zero(*cfg.gamma_override);
  if (cfg.b_kind == "scalar_affine")
    return Operator::scalar_affine(
        cfg.b_coeff, cfg.b_shift ? vector_from_config(s, *cfg.b_shift) : zeros(s));
  if (cfg.b_kind == "least_squares_gradient") {
    Matrix t = read_matrix_csv(cfg.ls_matrix_csv);
    const Matrix target = read_matrix_csv(cfg.ls_target_csv);
    if (target.cols != 1) throw InvalidArgument("ls_target_csv must be a single column");
    if (target.rows != t.rows) throw InvalidArgument("ls target length must match matrix rows");
    Space obs = make_euclidean_space(target.rows);
    return Operator::least_squares_gradient(std::move(t), make_vector(obs, target.a));
  }
  throw InvalidArgument("unknown b_kind '" + cfg.b_kind + "'");
}

}  // namespace

PreparedRun prepare_run(const RunConfig& cfg) {
  if (cfg.experiment == "example1") {
    Problem p = build_example1();
    auto [x0, x1] = example1_default_starts(p.space);
    if (cfg.x0) x0 = vector_from_config(p.space, *cfg.x0);
    if (cfg.x1) x1 = vector_from_config(p.space, *cfg.x1);
    if (cfg.gamma_override) p.gamma = *cfg.gamma_override;
    return PreparedRun{std::move(p), std::move(x0), std::move(x1), std::nullopt};
  }
  if (cfg.experiment == "example2") {
    Example2 ex = build_example2(cfg.grid_n, cfg.case_id);
    Vector x0 = cfg.x0 ? vector_from_config(ex.problem.space, *cfg.x0) : std::move(ex.x0);
    Vector x1 = cfg.x1 ? vector_from_config(ex.problem.space, *cfg.x1) : std::move(ex.x1);
    if (cfg.gamma_override) ex.problem.gamma = *cfg.gamma_override;
    return PreparedRun{std::move(ex.problem), std::move(x0), std::move(x1), std::nullopt};
  }
  if (cfg.experiment == "cs") {
    CSBuilt built = build_cs_instance(cfg.cs_m, cfg.cs_n, cfg.cs_k, cfg.noise_sigma, cfg.seed);
    Vector x0 = cfg.x0 ? vector_from_config(built.problem.space, *cfg.x0)
                       : zeros(built.problem.space);
    Vector x1 = cfg.x1 ? vector_from_config(built.problem.space, *cfg.x1)
                       : zeros(built.problem.space);
    if (cfg.gamma_override) built.problem.gamma = *cfg.gamma_override;
    return PreparedRun{std::move(built.problem), std::move(x0), std::move(x1),
                       std::move(built.instance)};
  }
  if (cfg.experiment == "custom") {
    Space s = make_euclidean_space(cfg.dim);
    Operator a = build_custom_a(cfg, s);
    Operator b = build_custom_b(cfg, s);
    double gamma;
    if (cfg.gamma_override)
      gamma = *cfg.gamma_override;
    else if (b.gamma())
      gamma = *b.gamma();
    else
      throw InvalidArgument("custom problem needs gamma_override");
    std::optional<Vector> ref, mn;
    if (cfg.reference) ref = vector_from_config(s, *cfg.reference);
    if (cfg.min_norm) mn = vector_from_config(s, *cfg.min_norm);
    Problem p = make_problem(s, std::move(a), std::move(b), gamma, std::move(ref), std::move(mn));
    Vector x0 = cfg.x0 ? vector_from_config(s, *cfg.x0) : zeros(s);
    Vector x1 = cfg.x1 ? vector_from_config(s, *cfg.x1) : zeros(s);
    return PreparedRun{std::move(p), std::move(x0), std::move(x1), std::nullopt};
  }
  throw InvalidArgument("unknown experiment '" + cfg.experiment + "'");
}

RunRecord run_prepared(const RunConfig& cfg, const PreparedRun& prep) {
  StopRule stop;
  stop.kind = cfg.stop == "residual_step"        ? StopRule::Kind::residual_step
              : cfg.stop == "error_to_reference" ? StopRule::Kind::error_to_reference
                                                 : StopRule::Kind::fixed_point_hit;
  stop.tol = cfg.tol;
  stop.max_iter = cfg.max_iter;

  const double gamma = prep.problem.gamma;
  RunRecord rec;
  if (cfg.algorithm == "alg31") {
    rec = run_alg31(prep.problem, make_schedule(cfg.theta, gamma), make_schedule(cfg.tau, gamma),
                    prep.x0, prep.x1, stop, cfg.epsilon);
  } else if (cfg.algorithm == "alg32") {
    rec = run_alg32(prep.problem, make_schedule(cfg.theta, gamma), make_schedule(cfg.alpha, gamma),
                    make_schedule(cfg.beta, gamma), make_schedule(cfg.tau, gamma), prep.x0, prep.x1,
                    stop, cfg.epsilon);
  } else if (cfg.algorithm == "inertial_prox_gibali") {
    rec = run_inertial_prox_gibali(prep.problem,
                                   make_gibali_rule(cfg.gibali_cap, cfg.gibali_eps_scale),
                                   make_schedule(cfg.lambda, gamma), prep.x0, prep.x1, stop,
                                   cfg.epsilon);
  } else {
    throw InvalidArgument("unknown algorithm '" + cfg.algorithm + "'");
  }
  rec.config_echo = config_to_map(cfg);
  return rec;
}

std::string resolve_out_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("PROX_OUT"); env && *env) return env;
  return "out";
}

namespace {

void write_artifacts(const RunConfig& cfg, const PreparedRun& prep, const RunRecord& rec,
                     const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_trace_csv(dir + "/trace.csv", rec, cfg.trace_timing);
  write_record_json(dir + "/record.json", rec);
  write_plot_dat(dir + "/plot.dat", rec);
  if (prep.cs) {
    save_cs_instance(dir + "/instance", *prep.cs);
    Matrix xcol{rec.final_iterate.size(), 1, rec.final_iterate.x};
    write_matrix_csv(dir + "/reconstruction.csv", xcol);
    const RecoveryMetrics m =
        recovery_metrics(prep.problem.space, rec.final_iterate, *prep.cs, rec);
    nlohmann::json j;
    j["l2_error"] = m.l2_error;
    j["rel_error"] = m.rel_error;
    j["support_precision"] = m.support_precision;
    j["support_recall"] = m.support_recall;
    j["iterations"] = m.iterations;
    j["wall_ms"] = m.wall_ms;
    std::ofstream out(dir + "/metrics.json");
    if (!out) throw IoError("cannot open for writing: " + dir + "/metrics.json");
    out << j.dump(2) << "\n";
  }
}

}  // namespace

ExecResult execute(const RunConfig& cfg) {
  ExecResult res;
  res.out_dir = resolve_out_dir(cfg);
  kernels::set_backend(cfg.backend == "serial" ? kernels::Backend::serial
                                               : kernels::Backend::parallel);
  try {
    const PreparedRun prep = prepare_run(cfg);
    try {
      res.record = run_prepared(cfg, prep);
      res.have_record = true;
    } catch (SolverNumericalError& e) {
      e.partial.config_echo = config_to_map(cfg);
      res.record = std::move(e.partial);
      res.have_record = true;
      res.message = e.what();
      write_artifacts(cfg, prep, res.record, res.out_dir);
      res.exit_code = 1;
      return res;
    }
    write_artifacts(cfg, prep, res.record, res.out_dir);
    switch (res.record.stop_reason) {
      case StopReason::tolerance_met:
      case StopReason::fixed_point:
        res.exit_code = 0;
        break;
      case StopReason::max_iter:
        res.exit_code = 2;
        break;
      case StopReason::numerical_error:
        res.exit_code = 1;
        break;
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.message = e.what();
  }
  return res;
}

}  // namespace prox
