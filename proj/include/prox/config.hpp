#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prox/schedules.hpp"

namespace prox {

/*
 * Flat key = value run description. Defaults here are the library defaults;
 * serialize_config() writes every present field so a config round-trips
 * through its own echo.
 */
struct RunConfig {
  std::string experiment;  // example1 | example2 | cs | custom
  std::string algorithm;   // alg31 | alg32 | inertial_prox_gibali

  std::string theta = "paper_quintic";  // paper_quintic | const:<c> | tabulated:<list>
  std::string alpha = "paper";          // paper | const:<c> | tabulated:<list>
  std::string beta = "harmonic";        // harmonic | scaled:<s> | const:<c> | tabulated:<list>
  std::string tau = "gamma";            // gamma | const:<v> | tabulated:<list>
  std::string lambda = "gamma";         // step size of the inertial-prox baseline

  double gibali_cap = 0.5;
  double gibali_eps_scale = 1.0;

  std::string stop = "residual_step";  // residual_step | error_to_reference | fixed_point_hit
  double tol = 1e-4;
  std::size_t max_iter = 100000;

  std::uint64_t seed = 1;
  std::string out;  // empty: $PROX_OUT, then ./out
  std::optional<double> gamma_override;
  double epsilon = 1e-8;  // tau admissibility band (eps, 2*gamma - eps)
  std::string backend = "parallel";  // parallel | serial
  bool trace_timing = false;         // real elapsed_ms in trace.csv (breaks byte determinism)

  std::size_t grid_n = 1024;  // example2
  int case_id = 1;            // example2 initial functions, key "case"

  std::size_t cs_m = 64, cs_n = 256, cs_k = 40;
  double noise_sigma = 0.0;

  std::optional<std::vector<double>> x0, x1;

  std::size_t dim = 2;  // custom
  std::string a_kind = "zero";  // zero | scalar_affine | normal_cone_l1_ball | normal_cone_affine_set
  double a_coeff = 0.0;
  std::optional<std::vector<double>> a_shift;
  double l1_radius = 1.0;
  std::optional<std::vector<double>> affine_normal;
  double affine_offset = 0.0;
  std::string b_kind = "zero";  // zero | scalar_affine | least_squares_gradient
  double b_coeff = 0.0;
  std::optional<std::vector<double>> b_shift;
  std::string ls_matrix_csv, ls_target_csv;
  std::optional<std::vector<double>> reference;
  std::optional<std::vector<double>> min_norm;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

std::string serialize_config(const RunConfig& cfg);
std::map<std::string, std::string> config_to_map(const RunConfig& cfg);

/* Builds the named schedule; "gamma" resolves to the constant gamma_value. */
Schedule make_schedule(const std::string& name, double gamma_value);

}  // namespace prox
