#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prox/hilbert.hpp"

namespace prox {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

Matrix make_matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
Matrix identity_matrix(std::size_t n);

void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

/* Euclidean projection onto {y : ||y||_1 <= t}; exact passthrough inside the ball. */
Vector project_l1_ball(const Space& s, const Vector& x, double t);

/* Projection onto {y : <a,y> = b} in the space's inner product. */
Vector project_affine(const Space& s, const Vector& x, const Vector& a, double b);

/* Largest eigenvalue of T^T T by power iteration with a fixed internal seed. */
double spectral_norm_gram(const Matrix& t, double tol = 1e-8, int max_iter = 10000);

/*
 * A maximal monotone operator with a closed-form resolvent
 * J_r(x) = (I + r op)^{-1}(x). Single-valued kinds also expose pointwise
 * evaluation through forward().
 */
class Operator {
 public:
  enum class Kind {
    scalar_affine,         // x -> a*x + d, a >= 0
    normal_cone_l1_ball,   // subdifferential of the indicator of {||x||_1 <= t}
    normal_cone_affine_set,  // indicator of {<a,x> = b}
    least_squares_gradient,  // x -> T^T (T x - b)
    zero
  };

  static Operator scalar_affine(double a, Vector shift);
  static Operator normal_cone_l1_ball(double radius);
  static Operator normal_cone_affine_set(Vector normal, double offset);
  static Operator least_squares_gradient(Matrix t, Vector target);
  static Operator zero(double gamma);

  Kind kind() const { return kind_; }
  bool single_valued() const;

  /* Cocoercivity constant of the forward map, when one is defined. */
  std::optional<double> gamma() const { return gamma_; }

  Vector resolvent(const Space& s, double r, const Vector& x) const;
  Vector forward(const Space& s, const Vector& x) const;

  double scalar_coeff() const { return a_; }
  double radius() const { return radius_; }
  const Matrix& matrix() const { return mat_; }

 private:
  Operator() = default;

  Kind kind_ = Kind::zero;
  double a_ = 0.0;          // scalar_affine coefficient
  Vector shift_;            // scalar_affine offset
  double radius_ = 0.0;     // l1 ball
  Vector normal_;           // affine set
  double offset_ = 0.0;     // affine set
  Matrix mat_;              // least squares
  Vector target_;           // least squares
  std::optional<double> gamma_;
};

}  // namespace prox
