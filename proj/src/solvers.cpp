#include "prox/solvers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace prox {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/* Error-column target: min-norm point when known (strong-convergence runs
 * aim there), otherwise any known reference solution. */
const Vector* error_target(const Problem& p, bool prefer_min_norm) {
  if (prefer_min_norm && p.min_norm_solution) return &*p.min_norm_solution;
  if (p.reference_solution) return &*p.reference_solution;
  if (p.min_norm_solution) return &*p.min_norm_solution;
  return nullptr;
}

void require_valid(const ValidationReport& rep, const std::string& what) {
  if (rep.valid) return;
  std::string msg = what + " schedule rejected:";
  for (const auto& f : rep.failures) msg += " " + f;
  throw InvalidSchedule(msg);
}

/* Accept theta if it fits any of the three strong-convergence cases. */
void require_theta_alg32(const Schedule& theta) {
  for (Role r : {Role::theta_case_I, Role::theta_case_II, Role::theta_case_III})
    if (validate_role(theta, r).valid) return;
  throw InvalidSchedule("theta schedule fits none of cases I (0<theta<1), II (=0), III (=1)");
}

/* Log-spaced sample of iteration indices for finite checks of schedule combinations. */
std::vector<std::size_t> sample_indices(std::size_t hi) {
  std::vector<std::size_t> idx;
  for (std::size_t n = 1; n <= hi;) {
    idx.push_back(n);
    n = std::max(n + 1, n + n / 8);
  }
  return idx;
}

struct Loop {
  const Problem& p;
  const StopRule& stop;
  bool prefer_min_norm;
  RunRecord rec;
  clock_type::time_point t0 = clock_type::now();
  const Vector* target = nullptr;

  Loop(const Problem& p, const StopRule& stop, bool prefer_min_norm)
      : p(p), stop(stop), prefer_min_norm(prefer_min_norm) {
    if (stop.tol <= 0.0) throw InvalidArgument("stop rule: tol must be positive");
    if (stop.max_iter == 0) throw InvalidArgument("stop rule: max_iter must be at least 1");
    target = error_target(p, prefer_min_norm);
    if (stop.kind == StopRule::Kind::error_to_reference && !target)
      throw InvalidArgument("error_to_reference stop requires a known solution");
    rec.rows.reserve(std::min<std::size_t>(stop.max_iter, 1 << 20));
  }

  /* Records row n and decides termination. Returns true when the run ends. */
  bool step(std::size_t n, const Vector& w, const Vector& x_curr, const Vector& x_next) {
    if (!all_finite(x_next)) {
      rec.stop_reason = StopReason::numerical_error;
      rec.final_iterate = x_curr;
      throw SolverNumericalError("non-finite iterate at n=" + std::to_string(n), rec);
    }
    TraceRow row;
    row.n = n;
    row.residual = distance(p.space, x_next, x_curr);
    row.error = target ? distance(p.space, x_next, *target)
                       : std::numeric_limits<double>::quiet_NaN();
    row.elapsed_ms = ms_since(t0);
    rec.rows.push_back(row);

    // Norms can overflow to inf while the iterate is still finite; the
    // near-fixed-point comparison is meaningless then, so skip it.
    const double wdist = distance(p.space, w, x_next);
    const double wnorm = norm(p.space, w);
    if (std::isfinite(wdist) && std::isfinite(wnorm) && wdist <= 1e-14 * (1.0 + wnorm)) {
      rec.stop_reason = StopReason::fixed_point;
      return true;
    }
    switch (stop.kind) {
      case StopRule::Kind::residual_step:
        if (row.residual < stop.tol) {
          rec.stop_reason = StopReason::tolerance_met;
          return true;
        }
        break;
      case StopRule::Kind::error_to_reference:
        if (row.error <= stop.tol) {
          rec.stop_reason = StopReason::tolerance_met;
          return true;
        }
        break;
      case StopRule::Kind::fixed_point_hit:
        if (wdist <= stop.tol) {
          rec.stop_reason = StopReason::fixed_point;
          return true;
        }
        break;
    }
    if (n >= stop.max_iter) {
      rec.stop_reason = StopReason::max_iter;
      return true;
    }
    return false;
  }
};

}  // namespace

Problem make_problem(Space space, Operator a, Operator b, double gamma,
                     std::optional<Vector> reference_solution,
                     std::optional<Vector> min_norm_solution) {
  if (!(gamma > 0.0)) throw InvalidArgument("problem: gamma must be positive");
  if (!b.single_valued()) throw InvalidArgument("problem: B must be single-valued");
  Problem p{std::move(space), std::move(a), std::move(b), gamma, std::move(reference_solution),
            std::move(min_norm_solution)};
  for (const auto* z : {&p.reference_solution, &p.min_norm_solution}) {
    if (!*z) continue;
    check_member(p.space, **z);
    const Vector image = fb_step(p, gamma, **z);
    if (distance(p.space, image, **z) > 1e-8)
      throw InvalidArgument("problem: declared solution fails the fixed-point residual check");
  }
  return p;
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::tolerance_met: return "tolerance_met";
    case StopReason::fixed_point: return "fixed_point";
    case StopReason::max_iter: return "max_iter";
    case StopReason::numerical_error: return "numerical_error";
  }
  return "?";
}

Vector fb_step(const Problem& p, double tau, const Vector& w) {
  if (!(tau > 0.0 && tau < 2.0 * p.gamma))
    throw InvalidArgument("fb_step: tau must lie in (0, 2*gamma)");
  const Vector bw = p.b.forward(p.space, w);
  const Vector forward = lincomb(p.space, 1.0, w, -tau, bw);
  return p.a.resolvent(p.space, tau, forward);
}

RunRecord run_alg31(const Problem& p, const Schedule& theta, const Schedule& tau, const Vector& x0,
                    const Vector& x1, const StopRule& stop, double eps) {
  require_valid(validate_role(theta, Role::theta_range), "theta");
  require_valid(validate_role(tau, Role::tau, p.gamma, eps), "tau");
  check_member(p.space, x0);
  check_member(p.space, x1);

  Loop loop(p, stop, false);
  Vector x_prev = x0, x_curr = x1;
  for (std::size_t n = 1;; ++n) {
    const Vector w = lincomb(p.space, 1.0 - theta(n), x_prev, theta(n), x_curr);
    Vector x_next = fb_step(p, tau(n), w);
    if (loop.step(n, w, x_curr, x_next)) {
      loop.rec.final_iterate = std::move(x_next);
      return std::move(loop.rec);
    }
    x_prev = std::move(x_curr);
    x_curr = std::move(x_next);
  }
}

RunRecord run_alg32(const Problem& p, const Schedule& theta, const Schedule& alpha,
                    const Schedule& beta, const Schedule& tau, const Vector& x0, const Vector& x1,
                    const StopRule& stop, double eps) {
  require_theta_alg32(theta);
  require_valid(validate_role(alpha, Role::alpha), "alpha");
  require_valid(validate_role(beta, Role::beta), "beta");
  require_valid(validate_role(tau, Role::tau, p.gamma, eps), "tau");
  check_member(p.space, x0);
  check_member(p.space, x1);
  const std::size_t horizon =
      std::min<std::size_t>(stop.max_iter, alpha.is_tabulated() ? alpha.horizon() : stop.max_iter);
  for (std::size_t n : sample_indices(std::max<std::size_t>(horizon, 1000))) {
    if (alpha.is_tabulated() && n > alpha.horizon()) break;
    if (beta.is_tabulated() && n > beta.horizon()) break;
    if (alpha(n) + beta(n) >= 1.0)
      throw InvalidSchedule("alpha_n + beta_n >= 1 at n=" + std::to_string(n));
  }

  Loop loop(p, stop, true);
  Vector x_prev = x0, x_curr = x1;
  for (std::size_t n = 1;; ++n) {
    const Vector w = lincomb(p.space, 1.0 - theta(n), x_prev, theta(n), x_curr);
    const Vector z_trial = fb_step(p, tau(n), w);
    // x_{n+1} = (1 - alpha_n - beta_n) w + alpha_n z + beta_n * 0 (anchor at origin)
    Vector x_next = lincomb(p.space, 1.0 - alpha(n) - beta(n), w, alpha(n), z_trial);
    if (loop.step(n, w, x_curr, x_next)) {
      loop.rec.final_iterate = std::move(x_next);
      return std::move(loop.rec);
    }
    x_prev = std::move(x_curr);
    x_curr = std::move(x_next);
  }
}

RunRecord run_inertial_prox_gibali(const Problem& p, const GibaliRule& rule,
                                   const Schedule& lambda, const Vector& x0, const Vector& x1,
                                   const StopRule& stop, double eps) {
  require_valid(validate_role(lambda, Role::tau, p.gamma, eps), "lambda");
  check_member(p.space, x0);
  check_member(p.space, x1);

  Loop loop(p, stop, false);
  Vector x_prev = x0, x_curr = x1;
  for (std::size_t n = 1;; ++n) {
    const Vector delta = lincomb(p.space, 1.0, x_curr, -1.0, x_prev);
    const double an = gibali_alpha(rule, n, inner(p.space, delta, delta));
    const Vector y = lincomb(p.space, 1.0, x_curr, an, delta);
    Vector x_next = fb_step(p, lambda(n), y);
    loop.rec.realized_alpha.push_back(an);
    if (loop.step(n, y, x_curr, x_next)) {
      loop.rec.final_iterate = std::move(x_next);
      return std::move(loop.rec);
    }
    x_prev = std::move(x_curr);
    x_curr = std::move(x_next);
  }
}

void write_trace_csv(const std::string& path, const RunRecord& rec, bool with_timing) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  const bool with_alpha = !rec.realized_alpha.empty();
  out << "n,residual,error,elapsed_ms";
  if (with_alpha) out << ",alpha_n";
  out << "\n";
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    const TraceRow& r = rec.rows[i];
    out << r.n << "," << fmt17(r.residual) << "," << fmt17(r.error) << ","
        << fmt17(with_timing ? r.elapsed_ms : 0.0);
    if (with_alpha) out << "," << fmt17(rec.realized_alpha[i]);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_plot_dat(const std::string& path, const RunRecord& rec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const TraceRow& r : rec.rows) {
    // Zero residual happens when a map annihilates exactly; clamp so the
    // file stays numeric.
    const double res = std::max(r.residual, std::numeric_limits<double>::min());
    out << r.n << " " << fmt17(std::log10(res)) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_record_json(const std::string& path, const RunRecord& rec) {
  nlohmann::json j;
  j["stop_reason"] = to_string(rec.stop_reason);
  j["iterations"] = rec.rows.size();
  if (!rec.rows.empty()) {
    j["final_residual"] = rec.rows.back().residual;
    if (std::isfinite(rec.rows.back().error)) j["final_error"] = rec.rows.back().error;
    j["elapsed_ms_total"] = rec.rows.back().elapsed_ms;
  }
  j["final_iterate"] = rec.final_iterate.x;
  if (!rec.realized_alpha.empty()) j["realized_alpha"] = rec.realized_alpha;
  j["config_echo"] = rec.config_echo;
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace prox
