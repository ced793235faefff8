#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prox/errors.hpp"

namespace prox {

/*
 * Closed-form parameter sequences indexed from n = 1. Asymptotic facts
 * (infimum, supremum, limit, series divergence) are attached per family so
 * role validation can reason symbolically instead of sampling to infinity.
 */
class Schedule {
 public:
  enum class Family { constant, theta_paper, alpha_paper, beta_harmonic, beta_scaled, tabulated };

  static Schedule constant(double c);
  static Schedule theta_paper();   // 0.5 - 1/(n+1)^5
  static Schedule alpha_paper();   // 0.5 - 1/(10n+2)
  static Schedule beta_harmonic(); // 1/(n+1)
  static Schedule beta_scaled(double s);  // s/(n+1)
  static Schedule tabulated(std::vector<double> values);

  double operator()(std::size_t n) const;  // n >= 1

  Family family() const { return family_; }
  std::string name() const;

  /* Range over n >= 1; for tabulated, over the table. */
  double inf() const;
  double sup() const;
  /* Limit as n -> inf when the family has one; nullopt for tabulated. */
  std::optional<double> limit() const;
  bool series_diverges() const;  // sum over n of the values = +inf
  bool is_tabulated() const { return family_ == Family::tabulated; }
  std::size_t horizon() const { return values_.size(); }  // tabulated only

 private:
  Family family_ = Family::constant;
  double c_ = 0.0;        // constant value or scale
  std::vector<double> values_;
};

enum class Role {
  theta_case_I,    // theta in (0,1), liminf theta(1-theta) > 0
  theta_case_II,   // theta identically 0
  theta_case_III,  // theta identically 1
  theta_range,     // theta in [0,1] (relaxed weak-convergence setting)
  alpha,           // liminf > 0, limsup < 1
  beta,            // limit 0, divergent series
  tau              // values in (eps, 2*gamma - eps)
};

struct ValidationReport {
  bool valid = false;
  bool finite_horizon = false;  // tabulated: asymptotics unverifiable, range-checked only
  std::vector<std::string> failures;
};

ValidationReport validate_role(const Schedule& s, Role role, double gamma = 0.0, double eps = 0.0);

/* Inertial coefficient rule: alpha_bar_n = min(cap, eps_n/||dx||^2), eps_n = eps_scale/n^2. */
struct GibaliRule {
  double cap = 0.5;
  double eps_scale = 1.0;
};

GibaliRule make_gibali_rule(double cap = 0.5, double eps_scale = 1.0);
double gibali_eps(const GibaliRule& rule, std::size_t n);
double gibali_alpha(const GibaliRule& rule, std::size_t n, double delta_norm_sq);

}  // namespace prox
