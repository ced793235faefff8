#include "prox/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "prox/kernels.hpp"
#include "prox/rng.hpp"

namespace prox {

Problem build_example1() {
  Space s = make_euclidean_space(3);
  Operator a = Operator::scalar_affine(3.0, zeros(s));
  Operator b = Operator::scalar_affine(1.0 / 3.0, make_vector(s, {-1.0, 2.0, 0.0}));
  Vector z = make_vector(s, {0.3, -0.6, 0.0});
  return make_problem(s, std::move(a), std::move(b), 3.0, z, z);
}

std::pair<Vector, Vector> example1_default_starts(const Space& s) {
  return {make_vector(s, {0.1, -0.2, 0.1}), make_vector(s, {0.2, 0.1, -0.3})};
}

Example2 build_example2(std::size_t grid_intervals, int initial_case) {
  if (grid_intervals < 2) throw InvalidArgument("build_example2: need at least 2 intervals");
  Space s = make_grid_space(grid_intervals);
  Operator a = Operator::scalar_affine(0.75, zeros(s));
  Operator b = Operator::scalar_affine(0.5, zeros(s));
  Problem p = make_problem(s, std::move(a), std::move(b), 2.0, zeros(s), zeros(s));
  Vector x0, x1;
  switch (initial_case) {
    case 1:
      x0 = from_function(s, [](double t) { return (std::sin(-3.0 * t) + std::cos(-5.0 * t)) / 2.0; });
      x1 = from_function(s, [](double t) { return 2.0 * std::sin(5.0 * t); });
      break;
    case 2:
      x0 = from_function(s, [](double t) { return 2.0 * t * std::sin(3.0 * t) * std::exp(-5.0 * t) / 200.0; });
      x1 = from_function(s, [](double t) { return t * t - std::exp(-2.0 * t); });
      break;
    case 3:
      x0 = from_function(s, [](double t) { return 2.0 * t * t * t * std::exp(5.0 * t); });
      x1 = from_function(s, [](double t) { return std::exp(t) * std::sin(3.0 * t) / 100.0; });
      break;
    default:
      throw InvalidArgument("build_example2: case must be 1, 2, or 3");
  }
  return Example2{std::move(p), std::move(x0), std::move(x1)};
}

CSBuilt build_cs_instance(std::size_t m, std::size_t n, std::size_t k, double noise_sigma,
                          std::uint64_t seed) {
  if (!(m >= 1 && n >= 2 && m < n)) throw InvalidArgument("build_cs_instance: need 1 <= m < n");
  if (!(k >= 1 && k < n)) throw InvalidArgument("build_cs_instance: need 1 <= k < n");
  if (noise_sigma < 0.0) throw InvalidArgument("build_cs_instance: negative noise_sigma");

  // Draw order is part of the format: T row-major, then spike signs in
  // ascending position order, then observation noise.
  Rng rng(seed);
  std::vector<double> entries(m * n);
  for (double& e : entries) e = rng.gaussian();
  Matrix t_mat = make_matrix(m, n, std::move(entries));

  Space sig = make_euclidean_space(n);
  Vector x_true = zeros(sig);
  for (std::size_t pos : rng.sample_without_replacement(n, k)) x_true[pos] = rng.sign();

  Space obs = make_euclidean_space(m);
  std::vector<double> bvals(m);
  kernels::matvec(t_mat.a.data(), m, n, x_true.data(), bvals.data());
  if (noise_sigma > 0.0)
    for (double& v : bvals) v += noise_sigma * rng.gaussian();
  Vector b = make_vector(obs, std::move(bvals));

  const double t = static_cast<double>(k) - 0.001;
  Operator a_op = Operator::normal_cone_l1_ball(t);
  Operator b_op = Operator::least_squares_gradient(t_mat, b);
  const double gamma = *b_op.gamma();

  CSInstance inst{std::move(t_mat), std::move(b), std::move(x_true), k, t, noise_sigma, seed};
  Problem p = make_problem(std::move(sig), std::move(a_op), std::move(b_op), gamma);
  return CSBuilt{std::move(inst), std::move(p)};
}

RecoveryMetrics recovery_metrics(const Space& s, const Vector& xhat, const CSInstance& inst,
                                 const RunRecord& rec) {
  check_member(s, xhat);
  if (xhat.size() != inst.x_true.size()) throw DimensionError("recovery_metrics: length mismatch");
  RecoveryMetrics out;
  double diff2 = 0.0, true2 = 0.0;
  std::size_t tp = 0, detected = 0, actual = 0;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    const double d = xhat[i] - inst.x_true[i];
    diff2 += d * d;
    true2 += inst.x_true[i] * inst.x_true[i];
    const bool hit = std::fabs(xhat[i]) > 0.5;
    const bool spike = inst.x_true[i] != 0.0;
    detected += hit;
    actual += spike;
    tp += hit && spike;
  }
  out.l2_error = std::sqrt(diff2);
  out.rel_error = true2 > 0.0 ? out.l2_error / std::sqrt(true2) : out.l2_error;
  out.support_precision = detected ? static_cast<double>(tp) / static_cast<double>(detected) : 1.0;
  out.support_recall = actual ? static_cast<double>(tp) / static_cast<double>(actual) : 1.0;
  out.iterations = rec.rows.size();
  out.wall_ms = rec.rows.empty() ? 0.0 : rec.rows.back().elapsed_ms;
  return out;
}

void save_cs_instance(const std::string& dir, const CSInstance& inst) {
  std::filesystem::create_directories(dir);
  write_matrix_csv(dir + "/T.csv", inst.t_mat);
  Matrix bcol{inst.b.size(), 1, inst.b.x};
  write_matrix_csv(dir + "/b.csv", bcol);
  Matrix xcol{inst.x_true.size(), 1, inst.x_true.x};
  write_matrix_csv(dir + "/x_true.csv", xcol);
  nlohmann::json meta;
  meta["m"] = inst.t_mat.rows;
  meta["n"] = inst.t_mat.cols;
  meta["K"] = inst.k;
  meta["t"] = inst.t;
  meta["sigma"] = inst.noise_sigma;
  meta["seed"] = inst.seed;
  std::ofstream out(dir + "/meta.json");
  if (!out) throw IoError("cannot open for writing: " + dir + "/meta.json");
  out << meta.dump(2) << "\n";
}

CSInstance load_cs_instance(const std::string& dir) {
  std::ifstream in(dir + "/meta.json");
  if (!in) throw IoError("cannot open: " + dir + "/meta.json");
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(dir + "/meta.json: " + e.what());
  }
  CSInstance inst;
  inst.t_mat = read_matrix_csv(dir + "/T.csv");
  const Matrix bcol = read_matrix_csv(dir + "/b.csv");
  const Matrix xcol = read_matrix_csv(dir + "/x_true.csv");
  if (bcol.cols != 1 || xcol.cols != 1) throw IoError(dir + ": b.csv/x_true.csv must be one column");
  Space obs = make_euclidean_space(bcol.rows);
  Space sig = make_euclidean_space(xcol.rows);
  inst.b = make_vector(obs, bcol.a);
  inst.x_true = make_vector(sig, xcol.a);
  try {
    inst.k = meta.at("K").get<std::size_t>();
    inst.t = meta.at("t").get<double>();
    inst.noise_sigma = meta.at("sigma").get<double>();
    inst.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.at("m").get<std::size_t>() != inst.t_mat.rows ||
        meta.at("n").get<std::size_t>() != inst.t_mat.cols)
      throw IoError(dir + ": meta.json shape disagrees with T.csv");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(dir + "/meta.json: " + e.what());
  }
  return inst;
}

}  // namespace prox
