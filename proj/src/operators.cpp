#include "prox/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prox/kernels.hpp"
#include "prox/rng.hpp"

namespace prox {

Matrix make_matrix(std::size_t rows, std::size_t cols, std::vector<double> entries) {
  if (rows == 0 || cols == 0) throw InvalidArgument("make_matrix: empty shape");
  if (entries.size() != rows * cols) throw DimensionError("make_matrix: entry count mismatch");
  if (!kernels::all_finite(entries.data(), entries.size()))
    throw InvalidArgument("make_matrix: non-finite entry");
  Matrix m;
  m.rows = rows;
  m.cols = cols;
  m.a = std::move(entries);
  return m;
}

Matrix identity_matrix(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return make_matrix(n, n, std::move(e));
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  char buf[64];
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m.at(r, c));
      out << buf << (c + 1 < m.cols ? "," : "");
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  std::vector<double> entries;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t this_cols = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw IoError(path + ": bad number '" + cell + "'");
      }
      while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
      if (pos != cell.size()) throw IoError(path + ": bad number '" + cell + "'");
      entries.push_back(v);
      ++this_cols;
    }
    if (rows == 0)
      cols = this_cols;
    else if (this_cols != cols)
      throw IoError(path + ": ragged rows");
    ++rows;
  }
  if (rows == 0) throw IoError(path + ": empty matrix");
  return make_matrix(rows, cols, std::move(entries));
}

Vector project_l1_ball(const Space& s, const Vector& x, double t) {
  if (t <= 0.0) throw InvalidArgument("project_l1_ball: radius must be positive");
  if (s.kind != Space::Kind::euclidean)
    throw InvalidArgument("project_l1_ball: requires a euclidean space");
  check_member(s, x);
  const std::size_t n = s.dim;
  if (kernels::sum_abs(x.data(), n) <= t) return x;
  // Threshold search on sorted magnitudes: find largest k with
  // |x|_(k) > (sum of top k - t)/k, then shrink by that lambda.
  std::vector<double> mag(x.x);
  for (double& v : mag) v = std::fabs(v);
  std::sort(mag.begin(), mag.end(), std::greater<>());
  double prefix = 0.0, lambda = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    prefix += mag[k];
    const double cand = (prefix - t) / static_cast<double>(k + 1);
    if (k + 1 == n || mag[k + 1] <= cand) {
      lambda = cand;
      break;
    }
  }
  Vector out = zeros(s);
  kernels::soft_threshold(x.data(), lambda, out.data(), n);
  return out;
}

Vector project_affine(const Space& s, const Vector& x, const Vector& a, double b) {
  check_member(s, x);
  check_member(s, a);
  const double a2 = inner(s, a, a);
  if (a2 == 0.0) throw InvalidArgument("project_affine: zero normal vector");
  const double c = (inner(s, a, x) - b) / a2;
  return lincomb(s, 1.0, x, -c, a);
}

namespace {

/* y = T^T (T x) for the power iteration. */
void gram_apply(const Matrix& t, const std::vector<double>& x, std::vector<double>& tmp,
                std::vector<double>& y) {
  kernels::matvec(t.a.data(), t.rows, t.cols, x.data(), tmp.data());
  kernels::matvec_t(t.a.data(), t.rows, t.cols, tmp.data(), y.data());
}

}  // namespace

double spectral_norm_gram(const Matrix& t, double tol, int max_iter) {
  if (tol <= 0.0) throw InvalidArgument("spectral_norm_gram: tol must be positive");
  double fro2 = kernels::dot(t.a.data(), t.a.data(), t.a.size());
  if (fro2 == 0.0) throw InvalidArgument("spectral_norm_gram: zero matrix");
  const std::size_t n = t.cols;
  Rng rng(0x5eed5eedULL);
  std::vector<double> v(n), tv(t.rows), gv(n);
  for (double& c : v) c = rng.gaussian();
  double nv = std::sqrt(kernels::dot(v.data(), v.data(), n));
  for (double& c : v) c /= nv;
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    gram_apply(t, v, tv, gv);
    lambda = kernels::dot(v.data(), gv.data(), n);
    // For symmetric G the eigenvalue error is bounded by ||Gv - lambda v||.
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = gv[i] - lambda * v[i];
      res2 += d * d;
    }
    if (lambda > 0.0 && std::sqrt(res2) <= tol * lambda) return lambda;
    const double ng = std::sqrt(kernels::dot(gv.data(), gv.data(), n));
    if (ng == 0.0) {
      // Iterate landed in the kernel; restart from a fresh direction.
      for (double& c : v) c = rng.gaussian();
      nv = std::sqrt(kernels::dot(v.data(), v.data(), n));
      for (double& c : v) c /= nv;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = gv[i] / ng;
  }
  throw ConvergenceError("spectral_norm_gram: no convergence within max_iter", lambda);
}

Operator Operator::scalar_affine(double a, Vector shift) {
  if (a < 0.0) throw InvalidArgument("scalar_affine: coefficient must be nonnegative");
  Operator op;
  op.kind_ = Kind::scalar_affine;
  op.a_ = a;
  op.shift_ = std::move(shift);
  if (a > 0.0) op.gamma_ = 1.0 / a;
  return op;
}

Operator Operator::normal_cone_l1_ball(double radius) {
  if (radius <= 0.0) throw InvalidArgument("normal_cone_l1_ball: radius must be positive");
  Operator op;
  op.kind_ = Kind::normal_cone_l1_ball;
  op.radius_ = radius;
  return op;
}

Operator Operator::normal_cone_affine_set(Vector normal, double offset) {
  bool nonzero = false;
  for (double v : normal.x) nonzero = nonzero || v != 0.0;
  if (!nonzero) throw InvalidArgument("normal_cone_affine_set: zero normal vector");
  Operator op;
  op.kind_ = Kind::normal_cone_affine_set;
  op.normal_ = std::move(normal);
  op.offset_ = offset;
  return op;
}

Operator Operator::least_squares_gradient(Matrix t, Vector target) {
  if (target.size() != t.rows) throw DimensionError("least_squares_gradient: target length != rows");
  Operator op;
  op.kind_ = Kind::least_squares_gradient;
  // The sharp constant is 1/lambda_max(T^T T); inflate the estimate by 1%
  // so the declared gamma stays valid under power-iteration error.
  const double lambda_hat = spectral_norm_gram(t);
  op.gamma_ = 1.0 / (1.01 * lambda_hat);
  op.mat_ = std::move(t);
  op.target_ = std::move(target);
  return op;
}

Operator Operator::zero(double gamma) {
  if (gamma <= 0.0) throw InvalidArgument("zero operator: gamma must be positive");
  Operator op;
  op.kind_ = Kind::zero;
  op.gamma_ = gamma;
  return op;
}

bool Operator::single_valued() const {
  return kind_ == Kind::scalar_affine || kind_ == Kind::least_squares_gradient ||
         kind_ == Kind::zero;
}

Vector Operator::resolvent(const Space& s, double r, const Vector& x) const {
  if (r <= 0.0) throw InvalidArgument("resolvent: r must be positive");
  check_member(s, x);
  switch (kind_) {
    case Kind::scalar_affine: {
      check_member(s, shift_);
      // y + r(a y + d) = x
      return lincomb(s, 1.0 / (1.0 + r * a_), x, -r / (1.0 + r * a_), shift_);
    }
    case Kind::normal_cone_l1_ball:
      return project_l1_ball(s, x, radius_);
    case Kind::normal_cone_affine_set:
      return project_affine(s, x, normal_, offset_);
    case Kind::least_squares_gradient: {
      // y + r T^T(T y - b) = x  =>  (I + r G) y = x + r T^T b, solved by Cholesky.
      const std::size_t n = mat_.cols;
      std::vector<double> g(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          double sum = 0.0;
          for (std::size_t k = 0; k < mat_.rows; ++k) sum += mat_.at(k, i) * mat_.at(k, j);
          g[i * n + j] = r * sum + (i == j ? 1.0 : 0.0);
        }
      // In-place Cholesky on the lower triangle.
      for (std::size_t j = 0; j < n; ++j) {
        double d = g[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
        if (d <= 0.0) throw NumericalError("resolvent: Cholesky breakdown");
        const double lj = std::sqrt(d);
        g[j * n + j] = lj;
        for (std::size_t i = j + 1; i < n; ++i) {
          double sum = g[i * n + j];
          for (std::size_t k = 0; k < j; ++k) sum -= g[i * n + k] * g[j * n + k];
          g[i * n + j] = sum / lj;
        }
      }
      std::vector<double> rhs(n);
      kernels::matvec_t(mat_.a.data(), mat_.rows, mat_.cols, target_.data(), rhs.data());
      for (std::size_t i = 0; i < n; ++i) rhs[i] = x[i] + r * rhs[i];
      for (std::size_t i = 0; i < n; ++i) {  // L u = rhs
        double sum = rhs[i];
        for (std::size_t k = 0; k < i; ++k) sum -= g[i * n + k] * rhs[k];
        rhs[i] = sum / g[i * n + i];
      }
      for (std::size_t ii = n; ii-- > 0;) {  // L^T y = u
        double sum = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= g[k * n + ii] * rhs[k];
        rhs[ii] = sum / g[ii * n + ii];
      }
      return make_vector(s, std::move(rhs));
    }
    case Kind::zero:
      return x;
  }
  throw InvalidArgument("resolvent: unknown operator kind");
}

Vector Operator::forward(const Space& s, const Vector& x) const {
  check_member(s, x);
  switch (kind_) {
    case Kind::scalar_affine:
      check_member(s, shift_);
      return lincomb(s, a_, x, 1.0, shift_);
    case Kind::least_squares_gradient: {
      std::vector<double> tx(mat_.rows), out(mat_.cols);
      kernels::matvec(mat_.a.data(), mat_.rows, mat_.cols, x.data(), tx.data());
      for (std::size_t i = 0; i < mat_.rows; ++i) tx[i] -= target_[i];
      kernels::matvec_t(mat_.a.data(), mat_.rows, mat_.cols, tx.data(), out.data());
      return make_vector(s, std::move(out));
    }
    case Kind::zero:
      return zeros(s);
    case Kind::normal_cone_l1_ball:
    case Kind::normal_cone_affine_set:
      break;
  }
  throw NotSingleValued("forward: operator is set-valued");
}

}  // namespace prox
