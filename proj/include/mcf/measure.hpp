#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mcf/cone.hpp"
#include "mcf/random.hpp"

namespace mcf {

// Euclidean ball intersected with the simplex Delta.
struct SimplexBall {
  std::vector<double> center;
  double radius = 0;

  bool contains(std::span<const double> p) const;
};

// Hit-count estimates of lambda0(W)/lambda0(Delta) and
// lambda0(p_Delta(M W))/lambda0(M_Delta).
struct DistortionEstimate {
  std::size_t samples = 0;
  double ball_fraction = 0;
  double ball_stderr = 0;
  double image_fraction = 0;
  double image_stderr = 0;

  // ball_fraction < image_fraction * beta^d, allowing `sigmas` standard
  // errors of sampling noise on the combined difference.
  bool bound_holds(double beta, std::size_t d, double sigmas) const;
};

DistortionEstimate estimate_distortion(const IntMatrix& m, const SimplexBall& w, std::size_t samples, CounterRng& rng);

}  // namespace mcf
