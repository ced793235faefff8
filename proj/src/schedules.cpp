#include "prox/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "prox/kernels.hpp"

namespace prox {

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

Schedule Schedule::constant(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("constant schedule: non-finite value");
  Schedule s;
  s.family_ = Family::constant;
  s.c_ = c;
  return s;
}

Schedule Schedule::theta_paper() {
  Schedule s;
  s.family_ = Family::theta_paper;
  return s;
}

Schedule Schedule::alpha_paper() {
  Schedule s;
  s.family_ = Family::alpha_paper;
  return s;
}

Schedule Schedule::beta_harmonic() {
  Schedule s;
  s.family_ = Family::beta_harmonic;
  return s;
}

Schedule Schedule::beta_scaled(double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("beta_scaled: scale must be positive");
  Schedule s;
  s.family_ = Family::beta_scaled;
  s.c_ = scale;
  return s;
}

Schedule Schedule::tabulated(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("tabulated schedule: empty table");
  if (!kernels::all_finite(values.data(), values.size()))
    throw InvalidArgument("tabulated schedule: non-finite entry");
  Schedule s;
  s.family_ = Family::tabulated;
  s.values_ = std::move(values);
  return s;
}

double Schedule::operator()(std::size_t n) const {
  if (n == 0) throw InvalidArgument("schedule index starts at 1");
  const double nd = static_cast<double>(n);
  switch (family_) {
    case Family::constant:
      return c_;
    case Family::theta_paper:
      return 0.5 - 1.0 / std::pow(nd + 1.0, 5);
    case Family::alpha_paper:
      return 0.5 - 1.0 / (10.0 * nd + 2.0);
    case Family::beta_harmonic:
      return 1.0 / (nd + 1.0);
    case Family::beta_scaled:
      return c_ / (nd + 1.0);
    case Family::tabulated:
      if (n > values_.size()) throw IndexError("tabulated schedule: index past horizon");
      return values_[n - 1];
  }
  throw InvalidArgument("unknown schedule family");
}

std::string Schedule::name() const {
  switch (family_) {
    case Family::constant:
      return "const:" + fmt17(c_);
    case Family::theta_paper:
      return "paper_quintic";
    case Family::alpha_paper:
      return "paper";
    case Family::beta_harmonic:
      return "harmonic";
    case Family::beta_scaled:
      return "scaled:" + fmt17(c_);
    case Family::tabulated: {
      std::string out = "tabulated:";
      for (std::size_t i = 0; i < values_.size(); ++i)
        out += (i ? "," : "") + fmt17(values_[i]);
      return out;
    }
  }
  return "?";
}

double Schedule::inf() const {
  switch (family_) {
    case Family::constant:
      return c_;
    case Family::theta_paper:
      return 0.5 - 1.0 / 32.0;  // n = 1
    case Family::alpha_paper:
      return 0.5 - 1.0 / 12.0;  // n = 1
    case Family::beta_harmonic:
    case Family::beta_scaled:
      return 0.0;  // limit, not attained
    case Family::tabulated:
      return *std::min_element(values_.begin(), values_.end());
  }
  return 0.0;
}

double Schedule::sup() const {
  switch (family_) {
    case Family::constant:
      return c_;
    case Family::theta_paper:
    case Family::alpha_paper:
      return 0.5;  // limit, not attained
    case Family::beta_harmonic:
      return 0.5;  // n = 1
    case Family::beta_scaled:
      return c_ / 2.0;  // n = 1
    case Family::tabulated:
      return *std::max_element(values_.begin(), values_.end());
  }
  return 0.0;
}

std::optional<double> Schedule::limit() const {
  switch (family_) {
    case Family::constant:
      return c_;
    case Family::theta_paper:
    case Family::alpha_paper:
      return 0.5;
    case Family::beta_harmonic:
    case Family::beta_scaled:
      return 0.0;
    case Family::tabulated:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Schedule::series_diverges() const {
  switch (family_) {
    case Family::constant:
      return c_ > 0.0;
    case Family::theta_paper:
    case Family::alpha_paper:
      return true;  // terms bounded below by a positive constant
    case Family::beta_harmonic:
    case Family::beta_scaled:
      return true;  // harmonic tail
    case Family::tabulated:
      return false;  // finite table, nothing to diverge
  }
  return false;
}

namespace {

void check_range(const Schedule& s, double lo, double hi, bool open, ValidationReport& rep,
                 const std::string& what) {
  const double inf = s.inf(), sup = s.sup();
  const bool ok = open ? (inf > lo && sup < hi) : (inf >= lo && sup <= hi);
  if (!ok)
    rep.failures.push_back(what + ": range [" + fmt17(inf) + ", " + fmt17(sup) +
                           "] outside admissible interval");
}

bool is_identically(const Schedule& s, double v) {
  if (s.family() == Schedule::Family::constant) return s.inf() == v;
  if (s.is_tabulated()) return s.inf() == v && s.sup() == v;
  return false;
}

}  // namespace

ValidationReport validate_role(const Schedule& s, Role role, double gamma, double eps) {
  ValidationReport rep;
  rep.finite_horizon = s.is_tabulated();
  switch (role) {
    case Role::theta_case_I: {
      check_range(s, 0.0, 1.0, true, rep, "theta");
      if (s.is_tabulated()) {
        // Range check only; liminf theta(1-theta) > 0 is unverifiable on a table.
        break;
      }
      const auto lim = s.limit();
      if (!lim || *lim * (1.0 - *lim) <= 0.0)
        rep.failures.push_back("theta: liminf theta(1-theta) not positive");
      break;
    }
    case Role::theta_case_II:
      if (!is_identically(s, 0.0)) rep.failures.push_back("theta: not identically 0");
      break;
    case Role::theta_case_III:
      if (!is_identically(s, 1.0)) rep.failures.push_back("theta: not identically 1");
      break;
    case Role::theta_range:
      check_range(s, 0.0, 1.0, false, rep, "theta");
      break;
    case Role::alpha: {
      if (s.is_tabulated()) {
        check_range(s, 0.0, 1.0, true, rep, "alpha");
        break;
      }
      const auto lim = s.limit();
      const double liminf = lim ? std::min(*lim, s.inf() > 0.0 ? s.inf() : *lim) : s.inf();
      const double limsup = lim ? *lim : s.sup();
      if (!(s.inf() > 0.0 && liminf > 0.0)) rep.failures.push_back("alpha: liminf not positive");
      if (!(limsup < 1.0 && s.sup() <= 1.0)) rep.failures.push_back("alpha: limsup not below 1");
      break;
    }
    case Role::beta: {
      if (s.is_tabulated()) {
        check_range(s, 0.0, 1.0, true, rep, "beta");
        break;
      }
      const auto lim = s.limit();
      if (!lim || *lim != 0.0) rep.failures.push_back("beta: limit is not 0");
      if (!s.series_diverges()) rep.failures.push_back("beta: series does not diverge");
      if (!(s.inf() >= 0.0 && s.sup() < 1.0)) rep.failures.push_back("beta: values outside (0,1)");
      break;
    }
    case Role::tau: {
      if (!(gamma > 0.0)) {
        rep.failures.push_back("tau: gamma must be positive");
        break;
      }
      if (!(eps >= 0.0 && eps < gamma)) {
        rep.failures.push_back("tau: eps must lie in [0, gamma)");
        break;
      }
      check_range(s, eps, 2.0 * gamma - eps, true, rep, "tau");
      break;
    }
  }
  rep.valid = rep.failures.empty();
  return rep;
}

GibaliRule make_gibali_rule(double cap, double eps_scale) {
  if (!(cap >= 0.0 && cap < 1.0))
    throw InvalidArgument("gibali rule: cap must lie in [0,1)");
  if (!(eps_scale > 0.0)) throw InvalidArgument("gibali rule: eps scale must be positive");
  return GibaliRule{cap, eps_scale};
}

double gibali_eps(const GibaliRule& rule, std::size_t n) {
  if (n == 0) throw InvalidArgument("gibali eps index starts at 1");
  const double nd = static_cast<double>(n);
  return rule.eps_scale / (nd * nd);
}

double gibali_alpha(const GibaliRule& rule, std::size_t n, double delta_norm_sq) {
  if (delta_norm_sq < 0.0) throw InvalidArgument("gibali alpha: negative squared norm");
  if (delta_norm_sq == 0.0) return rule.cap;
  return std::min(rule.cap, gibali_eps(rule, n) / delta_norm_sq);
}

}  // namespace prox
