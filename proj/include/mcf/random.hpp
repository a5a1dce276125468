#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "mcf/numeric.hpp"

namespace mcf {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the n-th output is a pure function of
// (seed, trial, stream, n), so trials can run on any worker in any order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0) noexcept
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ (stream * 0xD1B54A32D192ED03ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    return splitmix64(key_ ^ splitmix64(counter_++));
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}; n > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t r;
    do {
      r = (*this)();
    } while (r >= limit);
    return r % n;
  }

  // Standard exponential variate.
  double exponential() noexcept { return -std::log1p(-uniform01()); }

  // Uniform integer in [0, 2^bits).
  Integer bits(unsigned count) {
    Integer out = 0;
    unsigned left = count;
    while (left >= 64) {
      out <<= 64;
      out += Integer(static_cast<unsigned long>((*this)()));
      left -= 64;
    }
    if (left > 0) {
      out <<= left;
      out += Integer(static_cast<unsigned long>((*this)() >> (64 - left)));
    }
    return out;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Uniform point of the standard simplex (normalized exponentials).
inline std::vector<double> uniform_simplex(std::size_t d, CounterRng& rng) {
  std::vector<double> e(d);
  double sum = 0;
  for (auto& v : e) {
    v = rng.exponential();
    sum += v;
  }
  for (auto& v : e) v /= sum;
  return e;
}

// Coordinates k / 2^bits with k uniform in [1, 2^bits).
inline std::vector<Rational> random_dyadic(std::size_t d, unsigned bits, CounterRng& rng) {
  std::vector<Rational> out;
  out.reserve(d);
  Integer den = 1;
  den <<= bits;
  for (std::size_t i = 0; i < d; ++i) {
    Integer k;
    do {
      k = rng.bits(bits);
    } while (k == 0);
    Rational q(k, den);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

// Nearest multiple of 2^-bits, as an exact rational.
inline Rational dyadic_from_double(double v, unsigned bits) {
  const double scaled = std::ldexp(v, static_cast<int>(bits));
  Integer k;
  mpz_set_d(k.get_mpz_t(), std::nearbyint(scaled));
  Integer den = 1;
  den <<= bits;
  Rational q(k, den);
  q.canonicalize();
  return q;
}

}  // namespace mcf
