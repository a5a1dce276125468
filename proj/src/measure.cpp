#include "mcf/measure.hpp"

#include <cmath>

namespace mcf {

bool SimplexBall::contains(std::span<const double> p) const {
  double dist2 = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - center[i];
    dist2 += diff * diff;
  }
  return dist2 < radius * radius;
}

bool DistortionEstimate::bound_holds(double beta, std::size_t d, double sigmas) const {
  const double factor = std::pow(beta, static_cast<double>(d));
  const double sigma = std::sqrt(ball_stderr * ball_stderr + factor * factor * image_stderr * image_stderr);
  return ball_fraction < image_fraction * factor + sigmas * sigma;
}

DistortionEstimate estimate_distortion(const IntMatrix& m, const SimplexBall& w, std::size_t samples, CounterRng& rng) {
  const std::size_t d = m.dim();
  const auto sums = column_sums(m);
  std::vector<double> inv_col(d);
  for (std::size_t j = 0; j < d; ++j) inv_col[j] = 1.0 / sums[j].get_d();

  std::size_t ball_hits = 0;
  std::size_t image_hits = 0;
  std::vector<double> z(d);
  for (std::size_t s = 0; s < samples; ++s) {
    if (w.contains(uniform_simplex(d, rng))) ++ball_hits;

    // M_Delta is the simplex spanned by the normalized columns M e_j / C_j;
    // barycentric weights t give the preimage direction sum_j (t_j / C_j) e_j.
    const auto t = uniform_simplex(d, rng);
    double norm = 0;
    for (std::size_t j = 0; j < d; ++j) {
      z[j] = t[j] * inv_col[j];
      norm += z[j];
    }
    for (auto& v : z) v /= norm;
    if (w.contains(z)) ++image_hits;
  }

  DistortionEstimate e;
  e.samples = samples;
  const double n = static_cast<double>(samples);
  e.ball_fraction = static_cast<double>(ball_hits) / n;
  e.image_fraction = static_cast<double>(image_hits) / n;
  e.ball_stderr = std::sqrt(e.ball_fraction * (1 - e.ball_fraction) / n);
  e.image_stderr = std::sqrt(e.image_fraction * (1 - e.image_fraction) / n);
  return e;
}

}  // namespace mcf
