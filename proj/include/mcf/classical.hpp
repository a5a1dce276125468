#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mcf/cone.hpp"
#include "mcf/random.hpp"
#include "mcf/trajectory.hpp"

namespace mcf::classical {

// Positive-cone vector whose last coordinate is a maximum.
class GammaVector {
 public:
  explicit GammaVector(ConeVector x);
  const ConeVector& vec() const noexcept { return x_; }
  std::size_t dim() const noexcept { return x_.dim(); }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  friend bool operator==(const GammaVector&, const GammaVector&) = default;

 private:
  ConeVector x_;
};

// Ascending nonnegative vector.
class LambdaVector {
 public:
  explicit LambdaVector(ConeVector x);
  const ConeVector& vec() const noexcept { return x_; }
  std::size_t dim() const noexcept { return x_.dim(); }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  friend bool operator==(const LambdaVector&, const LambdaVector&) = default;

 private:
  ConeVector x_;
};

template <class V>
struct Step {
  V x;
  IntMatrix elem;  // elem * x' == x
};

// d = 2; ties take the x[1] >= x[2] branch.
Step<ConeVector> euclid_step(const ConeVector& x);

// i0 = min{i >= 2 : x[i] > x[1]} (1-based), or 0 when there is none.
std::size_t jp_pivot(const GammaVector& x);

// Throws ZeroEntry (x[1] == 0), NoLargerEntry, TieBoundary (x[d] == 2 x[1]
// with i0 == d).
Step<GammaVector> jp_subtractive_step(const GammaVector& x);

// k(x) = sum_{i >= 2} floor(x[i] / x[1]).
Integer jp_k(const GammaVector& x);

struct JpAccelerated {
  GammaVector x;
  IntMatrix elem;
  Integer k;
  bool zero_entry;  // exact divisibility produced a zero coordinate
};

// Throws ZeroEntry when x[1] == 0.
JpAccelerated jp_accelerated_step(const GammaVector& x);

Step<LambdaVector> poincare_step(const LambdaVector& x);
Step<LambdaVector> km_step(const LambdaVector& x);

// Raw in-place variants shared by exact and probe modes. The Poincare and
// Kraaikamp-Mester maps expect ascending input and keep it ascending.
template <class Scalar>
void poincare_in_place(std::vector<Scalar>& x);
template <class Scalar>
void km_in_place(std::vector<Scalar>& x);
// Requires x[1] > 0.
template <class Scalar>
void jp_accelerated_in_place(std::vector<Scalar>& x);

enum class Algo { Poincare, KraaikampMester, JacobiPerron };

std::string_view to_string(Algo a) noexcept;
// Accepts "poincare", "km", "jacobi_perron"; throws ParseError.
Algo parse_algo(std::string_view name);

struct AxisLimitConfig {
  std::size_t budget = 10000;
  ProbeReal eps = ProbeReal("1e-12");
  ProbeReal floor = ProbeReal("1e-25");
};

struct AxisLimitReport {
  bool converged = false;
  ProbeReal axis_value = 0;  // last coordinate at halt, start normalized to |x| = 1
  std::size_t steps_used = 0;
  ProbeReal residual = 0;  // max of the other coordinates relative to the last
};

// Iterates `a` in probe mode from x0 (normalized to the simplex first) until
// every coordinate but the last is below eps times the last one while the
// last stays above `floor`.
AxisLimitReport axis_limit_probe(Algo a, const ProbeVector& x0, const AxisLimitConfig& cfg);

// Ascending start in Lambda_d (or Gamma_d for Jacobi-Perron) from 64-bit
// dyadic coordinates.
ProbeVector random_probe_start(Algo a, std::size_t d, CounterRng& rng);

// algo,d,seed,trial,converged,axis_value,steps_used,residual
std::string axis_csv_header();
std::string axis_csv_row(Algo a, std::size_t d, std::uint64_t seed, std::size_t trial, const AxisLimitReport& r);

// Exact orbits. They halt with TIE at the first zero coordinate (or, for
// the subtractive Jacobi-Perron map, at a tie boundary).
Trajectory euclid_orbit(const ConeVector& x, std::size_t budget);
Trajectory jp_subtractive_orbit(const GammaVector& x, std::size_t budget);
Trajectory jp_accelerated_orbit(const GammaVector& x, std::size_t budget);
Trajectory poincare_orbit(const LambdaVector& x, std::size_t budget);
Trajectory km_orbit(const LambdaVector& x, std::size_t budget);

}  // namespace mcf::classical
