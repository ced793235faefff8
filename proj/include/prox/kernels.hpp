#pragma once

#include <cstddef>

namespace prox::kernels {

/*
 * Dense level-1/level-2 primitives with two implementations:
 *
 *   serial::  straight loops, the reference used by tests
 *   par::     OpenMP versions; reductions accumulate per-thread partial
 *             sums that are combined in thread-index order under a static
 *             schedule, so results are reproducible for a fixed thread count
 *
 * The unqualified wrappers dispatch on the process-wide backend and fall
 * back to the serial path below a work threshold where forking a team
 * costs more than the loop.
 */

enum class Backend { serial, parallel };

Backend backend();
void set_backend(Backend b);

/* Minimum elements per parallel region. */
constexpr std::size_t grain = 32768;

namespace serial {
double dot(const double* a, const double* b, std::size_t n);
double dot_weighted(const double* w, const double* a, const double* b, std::size_t n);
double sum_abs(const double* x, std::size_t n);
bool all_finite(const double* x, std::size_t n);
void scale(double c, const double* x, double* out, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n);
void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void soft_threshold(const double* x, double lambda, double* out, std::size_t n);
}  // namespace serial

namespace par {
double dot(const double* a, const double* b, std::size_t n);
double dot_weighted(const double* w, const double* a, const double* b, std::size_t n);
double sum_abs(const double* x, std::size_t n);
bool all_finite(const double* x, std::size_t n);
void scale(double c, const double* x, double* out, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n);
void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void soft_threshold(const double* x, double lambda, double* out, std::size_t n);
}  // namespace par

double dot(const double* a, const double* b, std::size_t n);
double dot_weighted(const double* w, const double* a, const double* b, std::size_t n);
double sum_abs(const double* x, std::size_t n);
bool all_finite(const double* x, std::size_t n);
void scale(double c, const double* x, double* out, std::size_t n);
void axpby(double a, const double* x, double b, const double* y, double* out, std::size_t n);
void lincomb3(double a, const double* x, double b, const double* y, double c, const double* z,
              double* out, std::size_t n);
void matvec(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void matvec_t(const double* mat, std::size_t rows, std::size_t cols, const double* x, double* out);
void soft_threshold(const double* x, double lambda, double* out, std::size_t n);

}  // namespace prox::kernels
