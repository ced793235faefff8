#include "prox/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <vector>

namespace prox::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::parallel};

int team_size(std::size_t n) {
  const int avail = omp_get_max_threads();
  const std::size_t by_work = n == 0 ? 1 : 1 + (n - 1) / grain;
  return static_cast<int>(std::min<std::size_t>(avail, by_work));
}

bool go_parallel(std::size_t n) {
  return g_backend.load(std::memory_order_relaxed) == Backend::parallel && n >= grain &&
         omp_get_max_threads() > 1;
}

using index = std::int64_t;

}  // namespace

Backend backend() { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

namespace serial {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double dot_weighted(const double* w, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

void scale(double c, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c * x[i];
}

void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = dot(mat + r * cols, x, cols);
}

void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += mat[r * cols + c] * x[r];
    out[c] = s;
  }
}

void soft_threshold(const double* x, double lambda, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::fabs(x[i]) - lambda;
    out[i] = m > 0.0 ? std::copysign(m, x[i]) : 0.0;
  }
}

}  // namespace serial

namespace par {

double dot(const double* a, const double* b, std::size_t n) {
  const int nt = team_size(n);
  std::vector<double> partial(nt, 0.0);
#pragma omp parallel num_threads(nt)
  {
    double local = 0.0;
#pragma omp for schedule(static)
    for (index i = 0; i < static_cast<index>(n); ++i) local += a[i] * b[i];
    partial[omp_get_thread_num()] = local;
  }
  double s = 0.0;
  for (int t = 0; t < nt; ++t) s += partial[t];
  return s;
}

double dot_weighted(const double* w, const double* a, const double* b, std::size_t n) {
  const int nt = team_size(n);
  std::vector<double> partial(nt, 0.0);
#pragma omp parallel num_threads(nt)
  {
    double local = 0.0;
#pragma omp for schedule(static)
    for (index i = 0; i < static_cast<index>(n); ++i) local += w[i] * a[i] * b[i];
    partial[omp_get_thread_num()] = local;
  }
  double s = 0.0;
  for (int t = 0; t < nt; ++t) s += partial[t];
  return s;
}

double sum_abs(const double* x, std::size_t n) {
  const int nt = team_size(n);
  std::vector<double> partial(nt, 0.0);
#pragma omp parallel num_threads(nt)
  {
    double local = 0.0;
#pragma omp for schedule(static)
    for (index i = 0; i < static_cast<index>(n); ++i) local += std::fabs(x[i]);
    partial[omp_get_thread_num()] = local;
  }
  double s = 0.0;
  for (int t = 0; t < nt; ++t) s += partial[t];
  return s;
}

bool all_finite(const double* x, std::size_t n) {
  int ok = 1;
#pragma omp parallel for schedule(static) num_threads(team_size(n)) reduction(&& : ok)
  for (index i = 0; i < static_cast<index>(n); ++i) ok = ok && std::isfinite(x[i]);
  return ok != 0;
}

void scale(double c, const double* x, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(team_size(n))
  for (index i = 0; i < static_cast<index>(n); ++i) out[i] = c * x[i];
}

void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(team_size(n))
  for (index i = 0; i < static_cast<index>(n); ++i) out[i] = a * x[i] + b * y[i];
}

void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(team_size(n))
  for (index i = 0; i < static_cast<index>(n); ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
#pragma omp parallel for schedule(static) num_threads(team_size(rows * cols))
  for (index r = 0; r < static_cast<index>(rows); ++r)
    out[r] = serial::dot(mat + static_cast<std::size_t>(r) * cols, x, cols);
}

void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
#pragma omp parallel for schedule(static) num_threads(team_size(rows * cols))
  for (index c = 0; c < static_cast<index>(cols); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += mat[r * cols + static_cast<std::size_t>(c)] * x[r];
    out[c] = s;
  }
}

void soft_threshold(const double* x, double lambda, double* out, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(team_size(n))
  for (index i = 0; i < static_cast<index>(n); ++i) {
    const double m = std::fabs(x[i]) - lambda;
    out[i] = m > 0.0 ? std::copysign(m, x[i]) : 0.0;
  }
}

}  // namespace par

double dot(const double* a, const double* b, std::size_t n) {
  return go_parallel(n) ? par::dot(a, b, n) : serial::dot(a, b, n);
}
double dot_weighted(const double* w, const double* a, const double* b, std::size_t n) {
  return go_parallel(n) ? par::dot_weighted(w, a, b, n) : serial::dot_weighted(w, a, b, n);
}
double sum_abs(const double* x, std::size_t n) {
  return go_parallel(n) ? par::sum_abs(x, n) : serial::sum_abs(x, n);
}
bool all_finite(const double* x, std::size_t n) {
  return go_parallel(n) ? par::all_finite(x, n) : serial::all_finite(x, n);
}
void scale(double c, const double* x, double* out, std::size_t n) {
  go_parallel(n) ? par::scale(c, x, out, n) : serial::scale(c, x, out, n);
}
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n) {
  go_parallel(n) ? par::axpby(a, x, b, y, out, n) : serial::axpby(a, x, b, y, out, n);
}
void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n) {
  go_parallel(n) ? par::lincomb3(a, x, b, y, c, z, out, n)
                 : serial::lincomb3(a, x, b, y, c, z, out, n);
}
void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
  go_parallel(rows * cols) ? par::matvec(mat, rows, cols, x, out)
                           : serial::matvec(mat, rows, cols, x, out);
}
void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out) {
  go_parallel(rows * cols) ? par::matvec_t(mat, rows, cols, x, out)
                           : serial::matvec_t(mat, rows, cols, x, out);
}
void soft_threshold(const double* x, double lambda, double* out, std::size_t n) {
  go_parallel(n) ? par::soft_threshold(x, lambda, out, n) : serial::soft_threshold(x, lambda, out, n);
}

}  // namespace prox::kernels
