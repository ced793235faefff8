#include "prox/rng.hpp"

#include <algorithm>
#include <cmath>

namespace prox {

double Rng::gaussian() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  have_cached_ = true;
  return r * std::cos(a);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
  if (k > n) throw InvalidArgument("sample_without_replacement: k > n");
  std::vector<std::size_t> picked;
  picked.reserve(k);
  // Floyd's algorithm: k iterations, no O(n) scratch.
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = static_cast<std::size_t>(uniform() * static_cast<double>(j + 1));
    const std::size_t r = std::min(t, j);
    if (std::find(picked.begin(), picked.end(), r) != picked.end()) {
      picked.push_back(j);
    } else {
      picked.push_back(r);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace prox
