#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prox/hilbert.hpp"
#include "prox/operators.hpp"
#include "prox/schedules.hpp"

namespace prox {

/*
 * The inclusion 0 in (A+B)x: A maximal monotone with computable resolvent,
 * B single-valued and gamma-cocoercive. Solutions are the fixed points of
 * x -> J_tau^A(x - tau Bx) for any tau in (0, 2 gamma).
 */
struct Problem {
  Space space;
  Operator a;
  Operator b;
  double gamma = 0.0;
  std::optional<Vector> reference_solution;  // a known solution, for error columns
  std::optional<Vector> min_norm_solution;   // projection of 0 onto the solution set
};

Problem make_problem(Space space, Operator a, Operator b, double gamma,
                     std::optional<Vector> reference_solution = std::nullopt,
                     std::optional<Vector> min_norm_solution = std::nullopt);

struct StopRule {
  enum class Kind {
    residual_step,        // ||x_{n+1} - x_n|| < tol
    error_to_reference,   // ||x_{n+1} - z|| <= tol
    fixed_point_hit       // ||w_n - x_{n+1}|| <= tol
  };
  Kind kind = Kind::residual_step;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
};

enum class StopReason { tolerance_met, fixed_point, max_iter, numerical_error };
std::string to_string(StopReason r);

struct TraceRow {
  std::size_t n = 0;       // counts completed forward-backward applications, from 1
  double residual = 0.0;   // ||x_{n+1} - x_n||
  double error = 0.0;      // ||x_{n+1} - target||, NaN when no target is known
  double elapsed_ms = 0.0; // wall time since run start
};

struct RunRecord {
  std::vector<TraceRow> rows;
  StopReason stop_reason = StopReason::max_iter;
  Vector final_iterate;
  std::vector<double> realized_alpha;  // inertial-prox baseline only, per row
  std::map<std::string, std::string> config_echo;
};

/* Thrown when an iterate goes non-finite; carries the rows seen so far. */
class SolverNumericalError : public NumericalError {
 public:
  SolverNumericalError(const std::string& msg, RunRecord partial)
      : NumericalError(msg), partial(std::move(partial)) {}
  RunRecord partial;
};

/* One application of x -> J_tau^A(w - tau B w). */
Vector fb_step(const Problem& p, double tau, const Vector& w);

RunRecord run_alg31(const Problem& p, const Schedule& theta, const Schedule& tau, const Vector& x0,
                    const Vector& x1, const StopRule& stop, double eps = 1e-8);

RunRecord run_alg32(const Problem& p, const Schedule& theta, const Schedule& alpha,
                    const Schedule& beta, const Schedule& tau, const Vector& x0, const Vector& x1,
                    const StopRule& stop, double eps = 1e-8);

RunRecord run_inertial_prox_gibali(const Problem& p, const GibaliRule& rule,
                                   const Schedule& lambda, const Vector& x0, const Vector& x1,
                                   const StopRule& stop, double eps = 1e-8);

/* trace.csv: header n,residual,error,elapsed_ms (+alpha_n when realized_alpha present). */
void write_trace_csv(const std::string& path, const RunRecord& rec, bool with_timing);
/* plot.dat: n and log10 residual, space separated, no header. */
void write_plot_dat(const std::string& path, const RunRecord& rec);
/* record.json: stop reason, counts, final iterate, config echo, timing summary. */
void write_record_json(const std::string& path, const RunRecord& rec);

}  // namespace prox
