#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcf/cone.hpp"
#include "mcf/random.hpp"
#include "mcf/stats.hpp"
#include "mcf/trajectory.hpp"

namespace mcf::selmer {

// Ascending nonnegative vector (the cone Sigma_d).
class SortedConeVector {
 public:
  explicit SortedConeVector(ConeVector x);
  const ConeVector& vec() const noexcept { return x_; }
  std::size_t dim() const noexcept { return x_.dim(); }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  friend bool operator==(const SortedConeVector&, const SortedConeVector&) = default;

 private:
  ConeVector x_;
};

bool in_omega(std::span<const Rational> x);

// Point of the absorbing cone x[1] <= ... <= x[d] <= x[1] + x[2].
class OmegaVector {
 public:
  // Throws NotInOmega.
  explicit OmegaVector(ConeVector x);
  const ConeVector& vec() const noexcept { return x_; }
  std::size_t dim() const noexcept { return x_.dim(); }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  friend bool operator==(const OmegaVector&, const OmegaVector&) = default;

 private:
  ConeVector x_;
};

// Arrangement (1' ... d') of coordinate labels: letters()[k] is the label in
// slot k+1.
class TagPermutation {
 public:
  TagPermutation() = default;
  explicit TagPermutation(std::vector<int> letters);
  static TagPermutation identity(std::size_t d);
  static TagPermutation parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  int operator[](std::size_t slot) const { return letters_[slot]; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  std::string display() const;

  friend bool operator==(const TagPermutation&, const TagPermutation&) = default;
  friend auto operator<=>(const TagPermutation&, const TagPermutation&) = default;

 private:
  std::vector<int> letters_;
};

// A(1' ... d') = (1' d' 2' ... (d-1)'),  B(1' ... d') = (d' 1' 2' ... (d-1)').
TagPermutation shift_a(const TagPermutation& t);
TagPermutation shift_b(const TagPermutation& t);

struct SelmerStep {
  SortedConeVector x;
  TagPermutation sigma;  // sigma[k] = pre-sort index that lands in slot k
  IntMatrix elem;        // elem * x' == x
};

// (x[1], ..., x[d-1], x[d] - x[1]) sorted stably. Throws ZeroEntry if x[1] == 0.
SelmerStep selmer_step(const SortedConeVector& x);

enum class Branch { One, Two };

struct OmegaStep {
  OmegaVector x;
  Branch branch;
  IntMatrix elem;
};

IntMatrix omega_elem(std::size_t d, Branch b);

// Branch One when x[d] >= 2 x[1]. Throws ZeroEntry if x[1] == 0.
OmegaStep omega_step(const OmegaVector& x);

// In-place restriction to Omega; returns the branch. No validation.
Branch omega_step_in_place(std::vector<Rational>& x);

// Column sums of M * elem from those of M.
void advance_column_sums(std::vector<Integer>& sums, Branch b);

struct TaggedState {
  OmegaVector x;
  TagPermutation tag;
};

TaggedState tagged_step(const OmegaVector& x, const TagPermutation& tag);

struct Absorption {
  bool absorbed = false;
  std::size_t steps = 0;
  std::optional<ErrorKind> stopped_by;  // ZeroEntry when the orbit degenerated
};

// Iterates selmer_step until the state lies in Omega_d.
Absorption absorbing_probe(const SortedConeVector& x, std::size_t budget);

// Shortest word in {A, B} taking `from` to `to`.
std::string permutation_path(const TagPermutation& from, const TagPermutation& to);

struct SelmerGraph {
  std::vector<TagPermutation> nodes;
  std::vector<std::size_t> succ_a;
  std::vector<std::size_t> succ_b;

  std::size_t index_of(const TagPermutation& t) const;
  std::size_t edge_count() const { return succ_a.size() + succ_b.size(); }
  std::vector<std::size_t> in_degrees() const;
  bool regular() const;  // out-degree 2 and in-degree 2 everywhere
  bool strongly_connected() const;
};

// All d! arrangements with their A/B arrows; d <= 8 (DimensionTooLarge).
SelmerGraph selmer_graph(std::size_t d);

// Exact orbit of the unrestricted map on Sigma_d; nodes are the running
// tag. Halts with TIE when x[1] reaches zero.
Trajectory selmer_orbit(const SortedConeVector& x, std::size_t budget);

// Exact Omega-restricted orbit with tags starting from the identity.
Trajectory omega_orbit(const OmegaVector& x, std::size_t budget);

// Uniform point of Omega_1 (sum 1) as exact rationals; 512 random low bits
// per coordinate keep exact orbits away from zero entries for ~1000 steps.
std::vector<Rational> random_omega_point(std::size_t d, CounterRng& rng);

struct JacobianCheck {
  bool ratios_ok = true;  // u_i / w_i in [1/4, 4] for i >= 2
  bool range_ok = true;   // u_i, w_i in [1/(2d), 2/(d+1)] for i >= 2
};

// Points of Omega_1 sharing the first coordinate.
JacobianCheck jacobian_bounds(std::span<const Rational> u, std::span<const Rational> w);

struct PropertySuiteConfig {
  std::size_t d = 3;
  std::size_t trials = 1000;
  std::size_t budget = 200;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t jacobian_pairs = 1000;
};

struct PropertySuiteReport {
  PropertySuiteConfig config;
  std::size_t orbits = 0;
  std::size_t excluded = 0;  // orbits that hit a zero entry
  std::size_t steps = 0;
  std::size_t closure_violations = 0;
  std::size_t identity_violations = 0;  // elem * x' != x
  std::size_t tag_violations = 0;
  std::size_t half_decay_checks = 0;
  std::size_t half_decay_violations = 0;
  // Proof reading: S^i_1 + S^i_2 < v1 + v2 - vd at i = k(d-1).
  std::size_t combine_checks = 0;
  std::size_t combine_violations = 0;
  // Statement reading: S^i_1 + S^i_2 < vd - v1 - v2.
  std::size_t combine_statement_checks = 0;
  std::size_t combine_statement_violations = 0;
  std::size_t jacobian_pairs = 0;
  std::size_t jacobian_ratio_violations = 0;
  std::size_t jacobian_range_violations = 0;
  // (orbit length, fraction of orbits whose label d never reached slot 1).
  std::vector<std::pair<std::size_t, double>> critical_avoidance;

  bool passed() const;
  nlohmann::json to_json() const;
};

PropertySuiteReport selmer_property_suite(const PropertySuiteConfig& cfg);

struct BalanceConfig {
  std::size_t d = 3;
  Rational beta = 64;
  Rational k = 64;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t past_max = 40;  // past length drawn uniformly from [0, past_max]
  bool identity_past = false;
  std::size_t horizon = 100000;  // per-trial step cap
};

struct BalanceReport {
  BalanceConfig config;
  ProportionEstimate estimate;
  std::size_t excluded = 0;
  std::size_t horizon_hits = 0;

  nlohmann::json to_json() const;
};

// Probability that the accumulated matrix becomes beta-balanced before its
// largest column sum grows by K^d, given a random past and the conditional
// law of the current point.
BalanceReport balance_hitting_estimate(const BalanceConfig& cfg);

}  // namespace mcf::selmer
