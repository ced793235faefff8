#include "prox/hilbert.hpp"

#include <atomic>
#include <cmath>

#include "prox/kernels.hpp"

namespace prox {

namespace {
std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace

Space make_euclidean_space(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("make_euclidean_space: dim must be positive");
  Space s;
  s.kind = Space::Kind::euclidean;
  s.dim = dim;
  s.weights.assign(dim, 1.0);
  s.id = next_space_id();
  return s;
}

Space make_grid_space(std::size_t intervals) {
  if (intervals == 0) throw InvalidArgument("make_grid_space: need at least one interval");
  Space s;
  s.kind = Space::Kind::grid;
  s.dim = intervals + 1;
  const double h = 1.0 / static_cast<double>(intervals);
  s.weights.assign(s.dim, h);
  s.weights.front() = 0.5 * h;
  s.weights.back() = 0.5 * h;
  s.nodes.resize(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) s.nodes[i] = static_cast<double>(i) * h;
  s.nodes.back() = 1.0;
  s.id = next_space_id();
  return s;
}

Vector make_vector(const Space& s, std::vector<double> coords) {
  if (coords.size() != s.dim)
    throw DimensionError("make_vector: expected " + std::to_string(s.dim) + " coordinates, got " +
                         std::to_string(coords.size()));
  Vector v;
  v.space_id = s.id;
  v.x = std::move(coords);
  return v;
}

Vector zeros(const Space& s) {
  Vector v;
  v.space_id = s.id;
  v.x.assign(s.dim, 0.0);
  return v;
}

void check_member(const Space& s, const Vector& v) {
  if (v.space_id != s.id || v.size() != s.dim)
    throw DimensionError("vector does not belong to this space");
}

double inner(const Space& s, const Vector& u, const Vector& v) {
  check_member(s, u);
  check_member(s, v);
  if (s.kind == Space::Kind::euclidean) return kernels::dot(u.data(), v.data(), s.dim);
  return kernels::dot_weighted(s.weights.data(), u.data(), v.data(), s.dim);
}

double norm(const Space& s, const Vector& v) { return std::sqrt(inner(s, v, v)); }

double distance(const Space& s, const Vector& u, const Vector& v) {
  return norm(s, lincomb(s, 1.0, u, -1.0, v));
}

bool all_finite(const Vector& v) { return kernels::all_finite(v.data(), v.size()); }

Vector scale(const Space& s, double a, const Vector& u) {
  check_member(s, u);
  Vector out = zeros(s);
  kernels::scale(a, u.data(), out.data(), s.dim);
  return out;
}

Vector lincomb(const Space& s, double a, const Vector& u, double b, const Vector& v) {
  check_member(s, u);
  check_member(s, v);
  Vector out = zeros(s);
  kernels::axpby(a, u.data(), b, v.data(), out.data(), s.dim);
  return out;
}

Vector lincomb(const Space& s, double a, const Vector& u, double b, const Vector& v, double c,
               const Vector& w) {
  check_member(s, u);
  check_member(s, v);
  check_member(s, w);
  Vector out = zeros(s);
  kernels::lincomb3(a, u.data(), b, v.data(), c, w.data(), out.data(), s.dim);
  return out;
}

}  // namespace prox
