#include "prox/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace prox {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': bad number '" + v +
                          "'",
                      line, key);
  }
  if (pos != v.size())
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': bad number '" + v +
                          "'",
                      line, key);
  return out;
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) {
  std::size_t pos = 0;
  std::uint64_t out;
  try {
    out = std::stoull(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': bad integer '" + v +
                          "'",
                      line, key);
  }
  if (pos != v.size() || (!v.empty() && v[0] == '-'))
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': bad integer '" + v +
                          "'",
                      line, key);
  return out;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': expected true or false",
                    line, key);
}

std::vector<double> parse_vector(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_double(trim(cell), line, key));
  if (out.empty())
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': empty vector", line,
                      key);
  return out;
}

std::string join17(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt17(v[i]);
  return out;
}

void check_one_of(const std::string& v, std::initializer_list<const char*> allowed, int line,
                  const std::string& key) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string msg = "line " + std::to_string(line) + ": key '" + key + "': value '" + v +
                    "' not one of {";
  bool first = true;
  for (const char* a : allowed) {
    msg += std::string(first ? "" : ", ") + a;
    first = false;
  }
  throw ConfigError(msg + "}", line, key);
}

/* Syntax check a schedule string for a given key; positivity where required. */
void check_schedule(const std::string& v, const std::string& key, int line) {
  const bool is_tau = key == "tau" || key == "lambda";
  auto bad = [&](const std::string& why) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key + "': " + why, line, key);
  };
  if (v == "gamma") {
    if (!is_tau) bad("'gamma' is only meaningful for step-size schedules");
    return;
  }
  if (v == "paper_quintic") {
    if (key != "theta") bad("'paper_quintic' is a theta schedule");
    return;
  }
  if (v == "paper") {
    if (key != "alpha") bad("'paper' is an alpha schedule");
    return;
  }
  if (v == "harmonic") {
    if (key != "beta") bad("'harmonic' is a beta schedule");
    return;
  }
  if (v.rfind("scaled:", 0) == 0) {
    if (key != "beta") bad("'scaled:' is a beta schedule");
    if (!(parse_double(v.substr(7), line, key) > 0.0)) bad("scale must be positive");
    return;
  }
  if (v.rfind("const:", 0) == 0) {
    const double c = parse_double(v.substr(6), line, key);
    if (is_tau && !(c > 0.0)) bad("step size must be positive");
    return;
  }
  if (v.rfind("tabulated:", 0) == 0) {
    const auto vals = parse_vector(v.substr(10), line, key);
    if (is_tau)
      for (double c : vals)
        if (!(c > 0.0)) bad("step size must be positive");
    return;
  }
  bad("unknown schedule '" + v + "'");
}

}  // namespace

Schedule make_schedule(const std::string& name, double gamma_value) {
  if (name == "gamma") return Schedule::constant(gamma_value);
  if (name == "paper_quintic") return Schedule::theta_paper();
  if (name == "paper") return Schedule::alpha_paper();
  if (name == "harmonic") return Schedule::beta_harmonic();
  if (name.rfind("scaled:", 0) == 0) return Schedule::beta_scaled(std::stod(name.substr(7)));
  if (name.rfind("const:", 0) == 0) return Schedule::constant(std::stod(name.substr(6)));
  if (name.rfind("tabulated:", 0) == 0) {
    std::vector<double> vals;
    std::stringstream ss(name.substr(10));
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    return Schedule::tabulated(std::move(vals));
  }
  throw InvalidArgument("unknown schedule '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key = value", line, "");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(line) + ": empty key", line, "");
    if (!seen.insert(key).second)
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'", line,
                        key);

    if (key == "experiment") {
      check_one_of(val, {"example1", "example2", "cs", "custom"}, line, key);
      cfg.experiment = val;
    } else if (key == "algorithm") {
      check_one_of(val, {"alg31", "alg32", "inertial_prox_gibali"}, line, key);
      cfg.algorithm = val;
    } else if (key == "theta" || key == "alpha" || key == "beta" || key == "tau" ||
               key == "lambda") {
      check_schedule(val, key, line);
      (key == "theta"    ? cfg.theta
       : key == "alpha"  ? cfg.alpha
       : key == "beta"   ? cfg.beta
       : key == "tau"    ? cfg.tau
                         : cfg.lambda) = val;
    } else if (key == "gibali_cap") {
      cfg.gibali_cap = parse_double(val, line, key);
      if (!(cfg.gibali_cap >= 0.0 && cfg.gibali_cap < 1.0))
        throw ConfigError("line " + std::to_string(line) + ": gibali_cap must lie in [0,1)", line,
                          key);
    } else if (key == "gibali_eps_scale") {
      cfg.gibali_eps_scale = parse_double(val, line, key);
      if (!(cfg.gibali_eps_scale > 0.0))
        throw ConfigError("line " + std::to_string(line) + ": gibali_eps_scale must be positive",
                          line, key);
    } else if (key == "stop") {
      check_one_of(val, {"residual_step", "error_to_reference", "fixed_point_hit"}, line, key);
      cfg.stop = val;
    } else if (key == "tol") {
      cfg.tol = parse_double(val, line, key);
      if (!(cfg.tol > 0.0))
        throw ConfigError("line " + std::to_string(line) + ": tol must be positive", line, key);
    } else if (key == "max_iter") {
      cfg.max_iter = static_cast<std::size_t>(parse_u64(val, line, key));
      if (cfg.max_iter == 0)
        throw ConfigError("line " + std::to_string(line) + ": max_iter must be at least 1", line,
                          key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(val, line, key);
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "gamma_override") {
      cfg.gamma_override = parse_double(val, line, key);
      if (!(*cfg.gamma_override > 0.0))
        throw ConfigError("line " + std::to_string(line) + ": gamma_override must be positive",
                          line, key);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(val, line, key);
      if (!(cfg.epsilon >= 0.0))
        throw ConfigError("line " + std::to_string(line) + ": epsilon must be nonnegative", line,
                          key);
    } else if (key == "backend") {
      check_one_of(val, {"parallel", "serial"}, line, key);
      cfg.backend = val;
    } else if (key == "trace_timing") {
      cfg.trace_timing = parse_bool(val, line, key);
    } else if (key == "grid_n") {
      cfg.grid_n = static_cast<std::size_t>(parse_u64(val, line, key));
      if (cfg.grid_n < 2)
        throw ConfigError("line " + std::to_string(line) + ": grid_n must be at least 2", line,
                          key);
    } else if (key == "case") {
      const auto c = parse_u64(val, line, key);
      if (c < 1 || c > 3)
        throw ConfigError("line " + std::to_string(line) + ": case must be 1, 2, or 3", line, key);
      cfg.case_id = static_cast<int>(c);
    } else if (key == "m") {
      cfg.cs_m = static_cast<std::size_t>(parse_u64(val, line, key));
    } else if (key == "n") {
      cfg.cs_n = static_cast<std::size_t>(parse_u64(val, line, key));
    } else if (key == "k") {
      cfg.cs_k = static_cast<std::size_t>(parse_u64(val, line, key));
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = parse_double(val, line, key);
      if (cfg.noise_sigma < 0.0)
        throw ConfigError("line " + std::to_string(line) + ": noise_sigma must be nonnegative",
                          line, key);
    } else if (key == "x0") {
      cfg.x0 = parse_vector(val, line, key);
    } else if (key == "x1") {
      cfg.x1 = parse_vector(val, line, key);
    } else if (key == "dim") {
      cfg.dim = static_cast<std::size_t>(parse_u64(val, line, key));
      if (cfg.dim == 0)
        throw ConfigError("line " + std::to_string(line) + ": dim must be positive", line, key);
    } else if (key == "a_kind") {
      check_one_of(val, {"zero", "scalar_affine", "normal_cone_l1_ball", "normal_cone_affine_set"},
                   line, key);
      cfg.a_kind = val;
    } else if (key == "a_coeff") {
      cfg.a_coeff = parse_double(val, line, key);
      if (cfg.a_coeff < 0.0)
        throw ConfigError("line " + std::to_string(line) + ": a_coeff must be nonnegative", line,
                          key);
    } else if (key == "a_shift") {
      cfg.a_shift = parse_vector(val, line, key);
    } else if (key == "l1_radius") {
      cfg.l1_radius = parse_double(val, line, key);
      if (!(cfg.l1_radius > 0.0))
        throw ConfigError("line " + std::to_string(line) + ": l1_radius must be positive", line,
                          key);
    } else if (key == "affine_normal") {
      cfg.affine_normal = parse_vector(val, line, key);
    } else if (key == "affine_offset") {
      cfg.affine_offset = parse_double(val, line, key);
    } else if (key == "b_kind") {
      check_one_of(val, {"zero", "scalar_affine", "least_squares_gradient"}, line, key);
      cfg.b_kind = val;
    } else if (key == "b_coeff") {
      cfg.b_coeff = parse_double(val, line, key);
      if (cfg.b_coeff < 0.0)
        throw ConfigError("line " + std::to_string(line) + ": b_coeff must be nonnegative", line,
                          key);
    } else if (key == "b_shift") {
      cfg.b_shift = parse_vector(val, line, key);
    } else if (key == "ls_matrix_csv") {
      cfg.ls_matrix_csv = val;
    } else if (key == "ls_target_csv") {
      cfg.ls_target_csv = val;
    } else if (key == "reference") {
      cfg.reference = parse_vector(val, line, key);
    } else if (key == "min_norm") {
      cfg.min_norm = parse_vector(val, line, key);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'", line, key);
    }
  }

  if (cfg.experiment.empty())
    throw ConfigError("missing required key 'experiment'", 0, "experiment");
  if (cfg.algorithm.empty())
    throw ConfigError("missing required key 'algorithm'", 0, "algorithm");
  if (cfg.experiment == "cs") {
    if (!(cfg.cs_m >= 1 && cfg.cs_m < cfg.cs_n))
      throw ConfigError("cs requires 1 <= m < n", 0, "m");
    if (!(cfg.cs_k >= 1 && cfg.cs_k < cfg.cs_n))
      throw ConfigError("cs requires 1 <= k < n", 0, "k");
  }
  if (cfg.experiment == "custom") {
    if (cfg.b_kind == "zero" && !cfg.gamma_override)
      throw ConfigError("custom with b_kind = zero needs gamma_override", 0, "gamma_override");
    if (cfg.b_kind == "least_squares_gradient" &&
        (cfg.ls_matrix_csv.empty() || cfg.ls_target_csv.empty()))
      throw ConfigError("b_kind = least_squares_gradient needs ls_matrix_csv and ls_target_csv", 0,
                        "ls_matrix_csv");
    if (cfg.a_kind == "normal_cone_affine_set" && !cfg.affine_normal)
      throw ConfigError("a_kind = normal_cone_affine_set needs affine_normal", 0, "affine_normal");
    if (cfg.b_kind == "scalar_affine" && cfg.b_coeff == 0.0 && !cfg.gamma_override)
      throw ConfigError("constant-map B needs gamma_override", 0, "gamma_override");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::map<std::string, std::string> config_to_map(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["experiment"] = cfg.experiment;
  kv["algorithm"] = cfg.algorithm;
  kv["theta"] = cfg.theta;
  kv["alpha"] = cfg.alpha;
  kv["beta"] = cfg.beta;
  kv["tau"] = cfg.tau;
  kv["lambda"] = cfg.lambda;
  kv["gibali_cap"] = fmt17(cfg.gibali_cap);
  kv["gibali_eps_scale"] = fmt17(cfg.gibali_eps_scale);
  kv["stop"] = cfg.stop;
  kv["tol"] = fmt17(cfg.tol);
  kv["max_iter"] = std::to_string(cfg.max_iter);
  kv["seed"] = std::to_string(cfg.seed);
  if (!cfg.out.empty()) kv["out"] = cfg.out;
  if (cfg.gamma_override) kv["gamma_override"] = fmt17(*cfg.gamma_override);
  kv["epsilon"] = fmt17(cfg.epsilon);
  kv["backend"] = cfg.backend;
  kv["trace_timing"] = cfg.trace_timing ? "true" : "false";
  kv["grid_n"] = std::to_string(cfg.grid_n);
  kv["case"] = std::to_string(cfg.case_id);
  kv["m"] = std::to_string(cfg.cs_m);
  kv["n"] = std::to_string(cfg.cs_n);
  kv["k"] = std::to_string(cfg.cs_k);
  kv["noise_sigma"] = fmt17(cfg.noise_sigma);
  if (cfg.x0) kv["x0"] = join17(*cfg.x0);
  if (cfg.x1) kv["x1"] = join17(*cfg.x1);
  kv["dim"] = std::to_string(cfg.dim);
  kv["a_kind"] = cfg.a_kind;
  kv["a_coeff"] = fmt17(cfg.a_coeff);
  if (cfg.a_shift) kv["a_shift"] = join17(*cfg.a_shift);
  kv["l1_radius"] = fmt17(cfg.l1_radius);
  if (cfg.affine_normal) kv["affine_normal"] = join17(*cfg.affine_normal);
  kv["affine_offset"] = fmt17(cfg.affine_offset);
  kv["b_kind"] = cfg.b_kind;
  kv["b_coeff"] = fmt17(cfg.b_coeff);
  if (cfg.b_shift) kv["b_shift"] = join17(*cfg.b_shift);
  if (!cfg.ls_matrix_csv.empty()) kv["ls_matrix_csv"] = cfg.ls_matrix_csv;
  if (!cfg.ls_target_csv.empty()) kv["ls_target_csv"] = cfg.ls_target_csv;
  if (cfg.reference) kv["reference"] = join17(*cfg.reference);
  if (cfg.min_norm) kv["min_norm"] = join17(*cfg.min_norm);
  return kv;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_to_map(cfg)) out += k + " = " + v + "\n";
  return out;
}

}  // namespace prox
