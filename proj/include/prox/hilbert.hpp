#pragma once

#include <cstdint>
#include <vector>

#include "prox/errors.hpp"

namespace prox {

/*
 * A finite-dimensional real Hilbert space: either R^d with the standard
 * inner product, or nodal values of a function on [0,1] on a uniform grid,
 * paired by the trapezoid quadrature weights so that <u,v> approximates
 * the L2([0,1]) inner product.
 */
struct Space {
  enum class Kind { euclidean, grid };

  Kind kind = Kind::euclidean;
  std::size_t dim = 0;
  std::vector<double> weights;  // quadrature weights; all ones for euclidean
  std::vector<double> nodes;    // grid only: node coordinates in [0,1]
  std::uint64_t id = 0;         // distinguishes spaces of equal dimension
};

Space make_euclidean_space(std::size_t dim);
Space make_grid_space(std::size_t intervals);  // dim = intervals + 1 nodes

struct Vector {
  std::uint64_t space_id = 0;
  std::vector<double> x;

  std::size_t size() const { return x.size(); }
  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }
  const double* data() const { return x.data(); }
  double* data() { return x.data(); }
};

Vector make_vector(const Space& s, std::vector<double> coords);
Vector zeros(const Space& s);

/* Nodal samples of f over the grid (grid spaces only). */
template <typename F>
Vector from_function(const Space& s, F&& f) {
  if (s.kind != Space::Kind::grid)
    throw InvalidArgument("from_function: requires a grid space");
  Vector v;
  v.space_id = s.id;
  v.x.resize(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) v.x[i] = f(s.nodes[i]);
  return v;
}

void check_member(const Space& s, const Vector& v);

double inner(const Space& s, const Vector& u, const Vector& v);
double norm(const Space& s, const Vector& v);
double distance(const Space& s, const Vector& u, const Vector& v);
bool all_finite(const Vector& v);

Vector scale(const Space& s, double a, const Vector& u);
Vector lincomb(const Space& s, double a, const Vector& u, double b, const Vector& v);
Vector lincomb(const Space& s, double a, const Vector& u, double b, const Vector& v, double c,
               const Vector& w);

}  // namespace prox
