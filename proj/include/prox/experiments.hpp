#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "prox/solvers.hpp"

namespace prox {

/* R^3 problem: A = 3x, B = x/3 + (-1,2,0); unique solution (0.3,-0.6,0). */
Problem build_example1();
std::pair<Vector, Vector> example1_default_starts(const Space& s);

/* L^2([0,1]) problem on a trapezoid grid: A = (3/4)x, B = x/2; solution 0. */
struct Example2 {
  Problem problem;
  Vector x0;
  Vector x1;
};
Example2 build_example2(std::size_t grid_intervals, int initial_case);

struct CSInstance {
  Matrix t_mat;           // m x n sampling matrix
  Vector b;               // observations, length m
  Vector x_true;          // K-sparse signal, entries +-1
  std::size_t k = 0;
  double t = 0.0;         // l1-ball radius
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

struct CSBuilt {
  CSInstance instance;
  Problem problem;  // A = l1-ball normal cone, B = least-squares gradient
};

/* Deterministic given (m, n, k, noise_sigma, seed). */
CSBuilt build_cs_instance(std::size_t m, std::size_t n, std::size_t k, double noise_sigma,
                          std::uint64_t seed);

struct RecoveryMetrics {
  double l2_error = 0.0;
  double rel_error = 0.0;
  double support_precision = 0.0;  // detection threshold 0.5 on |x_i|
  double support_recall = 0.0;
  std::size_t iterations = 0;
  double wall_ms = 0.0;
};

RecoveryMetrics recovery_metrics(const Space& s, const Vector& xhat, const CSInstance& inst,
                                 const RunRecord& rec);

/* Directory layout: T.csv, b.csv, x_true.csv, meta.json. */
void save_cs_instance(const std::string& dir, const CSInstance& inst);
CSInstance load_cs_instance(const std::string& dir);

}  // namespace prox
