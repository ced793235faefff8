#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prox/errors.hpp"
#include "prox/schedules.hpp"

using namespace prox;

TEST_CASE("closed-form schedule values at small n") {
  const Schedule theta = Schedule::theta_paper();
  CHECK(theta(1) == 0.46875);
  CHECK(theta(2) == 0.5 - 1.0 / 243.0);
  const Schedule alpha = Schedule::alpha_paper();
  CHECK(alpha(1) == doctest::Approx(0.41666666666666663).epsilon(1e-16));
  CHECK(alpha(5) == 0.5 - 1.0 / 52.0);
  const Schedule beta = Schedule::beta_harmonic();
  CHECK(beta(1) == 0.5);
  CHECK(beta(9) == 0.1);
  const Schedule scaled = Schedule::beta_scaled(0.001);
  CHECK(scaled(1) == 0.0005);
  const Schedule c = Schedule::constant(0.7);
  CHECK(c(1) == 0.7);
  CHECK(c(1000000) == 0.7);
}

TEST_CASE("schedule names round-trip the family") {
  CHECK(Schedule::theta_paper().name() == "paper_quintic");
  CHECK(Schedule::alpha_paper().name() == "paper");
  CHECK(Schedule::beta_harmonic().name() == "harmonic");
  CHECK(Schedule::beta_scaled(0.001).name() == "scaled:0.001");
  CHECK(Schedule::constant(1.0).name() == "const:1");
}

TEST_CASE("tabulated schedules know their horizon") {
  const Schedule t = Schedule::tabulated({0.1, 0.2, 0.3});
  CHECK(t(1) == 0.1);
  CHECK(t(3) == 0.3);
  CHECK(t.horizon() == 3);
  CHECK_THROWS_AS(t(4), IndexError);
  CHECK_THROWS_AS(t(0), InvalidArgument);
  CHECK_THROWS_AS(Schedule::tabulated({}), InvalidArgument);
}

TEST_CASE("asymptotic facts per family") {
  const Schedule theta = Schedule::theta_paper();
  CHECK(theta.inf() == 0.46875);
  CHECK(theta.sup() == 0.5);
  CHECK(theta.limit().value() == 0.5);
  const Schedule beta = Schedule::beta_harmonic();
  CHECK(beta.limit().value() == 0.0);
  CHECK(beta.series_diverges());
  CHECK_FALSE(Schedule::constant(0.0).series_diverges());
  CHECK(Schedule::constant(0.5).series_diverges());
}

TEST_CASE("inertia weight validation distinguishes the three cases") {
  CHECK(validate_role(Schedule::theta_paper(), Role::theta_case_I).valid);
  CHECK_FALSE(validate_role(Schedule::constant(0.0), Role::theta_case_I).valid);
  CHECK(validate_role(Schedule::constant(0.0), Role::theta_case_II).valid);
  CHECK(validate_role(Schedule::constant(1.0), Role::theta_case_III).valid);
  CHECK_FALSE(validate_role(Schedule::constant(1.0), Role::theta_case_I).valid);
  CHECK_FALSE(validate_role(Schedule::constant(0.5), Role::theta_case_II).valid);
  CHECK(validate_role(Schedule::constant(0.5), Role::theta_case_I).valid);
  // [0,1] range admits all of the above
  for (double v : {0.0, 0.3, 1.0}) CHECK(validate_role(Schedule::constant(v), Role::theta_range).valid);
  CHECK_FALSE(validate_role(Schedule::constant(1.2), Role::theta_range).valid);
  CHECK_FALSE(validate_role(Schedule::constant(-0.1), Role::theta_range).valid);
}

TEST_CASE("relaxation and anchoring roles") {
  CHECK(validate_role(Schedule::alpha_paper(), Role::alpha).valid);
  CHECK(validate_role(Schedule::constant(0.5), Role::alpha).valid);
  CHECK_FALSE(validate_role(Schedule::constant(0.0), Role::alpha).valid);
  CHECK_FALSE(validate_role(Schedule::constant(1.0), Role::alpha).valid);
  CHECK_FALSE(validate_role(Schedule::beta_harmonic(), Role::alpha).valid);

  CHECK(validate_role(Schedule::beta_harmonic(), Role::beta).valid);
  CHECK(validate_role(Schedule::beta_scaled(0.001), Role::beta).valid);
  CHECK_FALSE(validate_role(Schedule::constant(0.5), Role::beta).valid);
  CHECK_FALSE(validate_role(Schedule::alpha_paper(), Role::beta).valid);
  const ValidationReport bad = validate_role(Schedule::constant(0.5), Role::beta);
  CHECK_FALSE(bad.failures.empty());
}

TEST_CASE("step size validation uses the cocoercivity window") {
  const double gamma = 3.0;
  const double eps = 1e-8;
  CHECK(validate_role(Schedule::constant(3.0), Role::tau, gamma, eps).valid);
  CHECK(validate_role(Schedule::constant(1.0), Role::tau, gamma, eps).valid);
  CHECK_FALSE(validate_role(Schedule::constant(6.0), Role::tau, gamma, eps).valid);
  CHECK_FALSE(validate_role(Schedule::constant(0.0), Role::tau, gamma, eps).valid);
  CHECK_FALSE(validate_role(Schedule::constant(-1.0), Role::tau, gamma, eps).valid);
}

TEST_CASE("tabulated validation is range-only and flagged") {
  const ValidationReport r = validate_role(Schedule::tabulated({0.1, 0.9}), Role::theta_range);
  CHECK(r.valid);
  CHECK(r.finite_horizon);
  const ValidationReport bad = validate_role(Schedule::tabulated({0.1, 1.5}), Role::theta_range);
  CHECK_FALSE(bad.valid);
  const ValidationReport tau_tab = validate_role(Schedule::tabulated({1.0, 2.0}), Role::tau, 3.0, 1e-8);
  CHECK(tau_tab.valid);
  CHECK(tau_tab.finite_horizon);
}

TEST_CASE("liminf of theta(1-theta) stays positive for the quintic family") {
  const Schedule theta = Schedule::theta_paper();
  double lo = 1.0;
  for (std::size_t n = 1; n <= 1000000; n = n < 100 ? n + 1 : n * 3 / 2) {
    const double v = theta(n);
    lo = std::min(lo, v * (1.0 - v));
  }
  CHECK(lo > 0.2);
}

TEST_CASE("inertial cap rule takes the binding branch") {
  const GibaliRule rule = make_gibali_rule(0.5, 1.0);
  CHECK(gibali_eps(rule, 1) == 1.0);
  CHECK(gibali_eps(rule, 2) == 0.25);
  // zero displacement: cap applies
  CHECK(gibali_alpha(rule, 3, 0.0) == 0.5);
  // eps_n / delta^2 = (1/9)/4 < cap
  CHECK(gibali_alpha(rule, 3, 4.0) == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
  // tiny displacement: cap binds
  CHECK(gibali_alpha(rule, 3, 1e-8) == 0.5);
  // realized alpha * delta^2 never exceeds eps_n when the ratio branch binds
  for (std::size_t n = 1; n <= 50; ++n) {
    const double d2 = 0.3 * n;
    const double a = gibali_alpha(rule, n, d2);
    CHECK(a <= 0.5);
    CHECK(a * d2 <= gibali_eps(rule, n) + 1e-15);
  }
}

TEST_CASE("rule construction validates inputs") {
  CHECK_NOTHROW(make_gibali_rule(0.0, 1.0));
  CHECK_THROWS_AS(make_gibali_rule(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_gibali_rule(-0.1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_gibali_rule(0.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(Schedule::beta_scaled(0.0), InvalidArgument);
  CHECK_THROWS_AS(Schedule::constant(std::nan("")), InvalidArgument);
}
