#include "mcf/classical.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mcf::classical {

namespace {

bool ascending(std::span<const Rational> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) return false;
  }
  return true;
}

template <class Scalar>
std::vector<std::size_t> stable_order(const std::vector<Scalar>& y) {
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  return order;
}

template <class Scalar>
std::vector<Scalar> permuted(const std::vector<Scalar>& y, const std::vector<std::size_t>& order) {
  std::vector<Scalar> out;
  out.reserve(y.size());
  for (std::size_t k : order) out.push_back(y[k]);
  return out;
}

}  // namespace

GammaVector::GammaVector(ConeVector x) : x_(std::move(x)) {
  const auto c = x_.coords();
  if (*std::max_element(c.begin(), c.end()) != c.back()) {
    throw Error(ErrorKind::InvalidArgument, "last coordinate is not a maximum");
  }
}

LambdaVector::LambdaVector(ConeVector x) : x_(std::move(x)) {
  if (!ascending(x_.coords())) throw Error(ErrorKind::InvalidArgument, "coordinates are not ascending");
}

Step<ConeVector> euclid_step(const ConeVector& x) {
  if (x.dim() != 2) throw Error(ErrorKind::InvalidArgument, "euclid step needs d = 2");
  if (x[0] >= x[1]) return {ConeVector({x[0] - x[1], x[1]}), IntMatrix::elementary(2, 0, 1)};
  return {ConeVector({x[0], x[1] - x[0]}), IntMatrix::elementary(2, 1, 0)};
}

std::size_t jp_pivot(const GammaVector& x) {
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (x[i] > x[0]) return i + 1;
  }
  return 0;
}

Step<GammaVector> jp_subtractive_step(const GammaVector& x) {
  const std::size_t d = x.dim();
  if (sgn(x[0]) == 0) throw Error(ErrorKind::ZeroEntry, "x[1] = 0");
  const std::size_t pivot = jp_pivot(x);
  if (pivot == 0) throw Error(ErrorKind::NoLargerEntry, "no coordinate exceeds x[1]");
  std::vector<Rational> y = x.vec().values();
  if (pivot < d) {
    y[pivot - 1] -= y[0];
    return {GammaVector(ConeVector(std::move(y))), IntMatrix::elementary(d, pivot - 1, 0)};
  }
  const Rational twice = 2 * x[0];
  if (x[d - 1] == twice) throw Error(ErrorKind::TieBoundary, "x[d] = 2 x[1]");
  if (x[d - 1] > twice) {
    y[d - 1] -= y[0];
    return {GammaVector(ConeVector(std::move(y))), IntMatrix::elementary(d, d - 1, 0)};
  }
  // (x[2], ..., x[d-1], x[d] - x[1], x[1])
  const Rational first = y[0];
  y[d - 1] -= first;
  std::rotate(y.begin(), y.begin() + 1, y.end());
  IntMatrix elem(d);
  elem(0, d - 1) = 1;
  for (std::size_t i = 1; i < d; ++i) elem(i, i - 1) = 1;
  elem(d - 1, d - 1) = 1;
  return {GammaVector(ConeVector(std::move(y))), std::move(elem)};
}

Integer jp_k(const GammaVector& x) {
  if (sgn(x[0]) == 0) throw Error(ErrorKind::ZeroEntry, "x[1] = 0");
  Integer k = 0;
  for (std::size_t i = 1; i < x.dim(); ++i) k += floor_div(x[i], x[0]).get_num();
  return k;
}

JpAccelerated jp_accelerated_step(const GammaVector& x) {
  const std::size_t d = x.dim();
  if (sgn(x[0]) == 0) throw Error(ErrorKind::ZeroEntry, "x[1] = 0");
  std::vector<Rational> y(d);
  IntMatrix elem(d);
  Integer k = 0;
  bool zero = false;
  for (std::size_t i = 1; i < d; ++i) {
    const Integer q = floor_div(x[i], x[0]).get_num();
    k += q;
    y[i - 1] = x[i] - q * x[0];
    zero = zero || sgn(y[i - 1]) == 0;
    elem(i, i - 1) = 1;
    elem(i, d - 1) = q;
  }
  y[d - 1] = x[0];
  elem(0, d - 1) = 1;
  return {GammaVector(ConeVector(std::move(y))), std::move(elem), std::move(k), zero};
}

template <class Scalar>
void poincare_in_place(std::vector<Scalar>& x) {
  for (std::size_t i = x.size() - 1; i >= 1; --i) x[i] -= x[i - 1];
  std::stable_sort(x.begin(), x.end());
}

template <class Scalar>
void km_in_place(std::vector<Scalar>& x) {
  for (std::size_t i = 1; i < x.size(); ++i) x[i] -= x[0];
  std::stable_sort(x.begin(), x.end());
}

template <class Scalar>
void jp_accelerated_in_place(std::vector<Scalar>& x) {
  const Scalar a = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    Scalar r = x[i] - Scalar(floor_div(x[i], a)) * a;
    if (r < 0) r += a;
    if (r >= a) r -= a;
    x[i - 1] = r;
  }
  x.back() = a;
}

template void poincare_in_place<Rational>(std::vector<Rational>&);
template void poincare_in_place<ProbeReal>(std::vector<ProbeReal>&);
template void km_in_place<Rational>(std::vector<Rational>&);
template void km_in_place<ProbeReal>(std::vector<ProbeReal>&);
template void jp_accelerated_in_place<Rational>(std::vector<Rational>&);
template void jp_accelerated_in_place<ProbeReal>(std::vector<ProbeReal>&);

Step<LambdaVector> poincare_step(const LambdaVector& x) {
  const std::size_t d = x.dim();
  std::vector<Rational> y = x.vec().values();
  for (std::size_t i = d - 1; i >= 1; --i) y[i] -= y[i - 1];
  const auto order = stable_order(y);
  IntMatrix elem(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      if (order[k] <= i) elem(i, k) = 1;
    }
  }
  return {LambdaVector(ConeVector(permuted(y, order))), std::move(elem)};
}

Step<LambdaVector> km_step(const LambdaVector& x) {
  const std::size_t d = x.dim();
  std::vector<Rational> y = x.vec().values();
  for (std::size_t i = 1; i < d; ++i) y[i] -= y[0];
  const auto order = stable_order(y);
  IntMatrix elem(d);
  for (std::size_t k = 0; k < d; ++k) {
    elem(order[k], k) += 1;
    if (order[k] == 0) {
      for (std::size_t i = 1; i < d; ++i) elem(i, k) += 1;
    }
  }
  return {LambdaVector(ConeVector(permuted(y, order))), std::move(elem)};
}

std::string_view to_string(Algo a) noexcept {
  switch (a) {
    case Algo::Poincare:
      return "poincare";
    case Algo::KraaikampMester:
      return "km";
    case Algo::JacobiPerron:
      return "jacobi_perron";
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  if (name == "poincare") return Algo::Poincare;
  if (name == "km") return Algo::KraaikampMester;
  if (name == "jacobi_perron") return Algo::JacobiPerron;
  throw Error(ErrorKind::ParseError, "unknown algorithm '" + std::string(name) + "'");
}

AxisLimitReport axis_limit_probe(Algo a, const ProbeVector& x0, const AxisLimitConfig& cfg) {
  if (!(cfg.eps > 0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  std::vector<ProbeReal> x = project_simplex(x0).values();
  if (a != Algo::JacobiPerron && !std::is_sorted(x.begin(), x.end())) {
    throw Error(ErrorKind::InvalidArgument, "probe start must be ascending");
  }
  AxisLimitReport r;
  auto measure = [&] {
    const ProbeReal last = x.back();
    const ProbeReal rest = *std::max_element(x.begin(), x.end() - 1);
    r.axis_value = last;
    r.residual = last > 0 ? ProbeReal(rest / last) : rest;
    r.converged = last > cfg.floor && r.residual < cfg.eps;
    return r.converged;
  };
  while (!measure() && r.steps_used < cfg.budget) {
    switch (a) {
      case Algo::Poincare:
        poincare_in_place(x);
        break;
      case Algo::KraaikampMester:
        km_in_place(x);
        break;
      case Algo::JacobiPerron:
        if (!(x[0] > 0)) return r;
        jp_accelerated_in_place(x);
        break;
    }
    ++r.steps_used;
  }
  return r;
}

ProbeVector random_probe_start(Algo, std::size_t d, CounterRng& rng) {
  std::vector<ProbeReal> x;
  x.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::uint64_t k;
    do {
      k = rng();
    } while (k == 0);
    x.push_back(ldexp(ProbeReal(k), -64));
  }
  std::sort(x.begin(), x.end());
  return ProbeVector(std::move(x));
}

std::string axis_csv_header() { return "algo,d,seed,trial,converged,axis_value,steps_used,residual"; }

std::string axis_csv_row(Algo a, std::size_t d, std::uint64_t seed, std::size_t trial, const AxisLimitReport& r) {
  std::ostringstream out;
  out << to_string(a) << ',' << d << ',' << seed << ',' << trial << ',' << (r.converged ? "true" : "false") << ','
      << r.axis_value.str(20, std::ios_base::scientific) << ',' << r.steps_used << ','
      << r.residual.str(20, std::ios_base::scientific);
  return out.str();
}

namespace {

// Runs `step` until the budget, a fixed point (TERMINAL), or an Error whose
// kind is reported as a TIE halt.
template <class V, class StepFn>
Trajectory run_orbit(const V& x, std::size_t budget, std::string_view tag, StepFn&& step) {
  Trajectory traj(x.vec());
  V state = x;
  for (std::size_t n = 0; n < budget; ++n) {
    try {
      auto s = step(state);
      if (s.x == state) {
        traj.halt = HaltReason::Terminal;
        traj.halt_detail = "fixed point";
        return traj;
      }
      traj.push(s.x.vec(), {}, std::string(tag), s.elem);
      state = std::move(s.x);
    } catch (const Error& e) {
      traj.halt = HaltReason::Tie;
      traj.halt_detail = std::string(to_string(e.kind())) + ": " + e.what();
      return traj;
    }
  }
  return traj;
}

}  // namespace

Trajectory euclid_orbit(const ConeVector& x, std::size_t budget) {
  if (x.dim() != 2) throw Error(ErrorKind::InvalidArgument, "euclid orbit needs d = 2");
  Trajectory traj(x);
  ConeVector state = x;
  for (std::size_t n = 0; n < budget; ++n) {
    if (sgn(state[0]) == 0 || sgn(state[1]) == 0) {
      traj.halt = HaltReason::Terminal;
      traj.halt_detail = "reached an axis";
      return traj;
    }
    const bool ge = state[0] >= state[1];
    auto s = euclid_step(state);
    traj.push_elementary(s.x, {}, ge ? "GE" : "LT", ge ? 0 : 1, ge ? 1 : 0);
    state = std::move(s.x);
  }
  if (sgn(state[0]) == 0 || sgn(state[1]) == 0) {
    traj.halt = HaltReason::Terminal;
    traj.halt_detail = "reached an axis";
  }
  return traj;
}

Trajectory jp_subtractive_orbit(const GammaVector& x, std::size_t budget) {
  return run_orbit(x, budget, "J", [](const GammaVector& v) { return jp_subtractive_step(v); });
}

Trajectory jp_accelerated_orbit(const GammaVector& x, std::size_t budget) {
  return run_orbit(x, budget, "JA", [](const GammaVector& v) {
    auto s = jp_accelerated_step(v);
    return Step<GammaVector>{std::move(s.x), std::move(s.elem)};
  });
}

Trajectory poincare_orbit(const LambdaVector& x, std::size_t budget) {
  return run_orbit(x, budget, "P", [](const LambdaVector& v) { return poincare_step(v); });
}

Trajectory km_orbit(const LambdaVector& x, std::size_t budget) {
  return run_orbit(x, budget, "KM", [](const LambdaVector& v) { return km_step(v); });
}

}  // namespace mcf::classical
