#pragma once

#include <cstdint>
#include <vector>

#include "prox/errors.hpp"

namespace prox {

/*
 * xorshift64* generator. Sequences depend only on the seed, never on the
 * platform or standard library, so instance generation is reproducible
 * across toolchains.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ULL;
  }

  /* Uniform on [0,1) with 53 random bits. */
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /* Standard normal via Box-Muller; the second deviate is cached. */
  double gaussian();

  /* k distinct indices from {0,...,n-1}, ascending. */
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  /* +1 or -1 from one bit. */
  double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace prox
