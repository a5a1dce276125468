#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcf/cone.hpp"
#include "mcf/trajectory.hpp"

namespace mcf::iet {

// A permutation of {1..d}, stored by images: images()[i-1] == pi(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(std::size_t d);

  // Parses the inverse-image display form "(pi^-1(1) ... pi^-1(d))", written
  // either as a digit string ("4321") or separated by commas/spaces
  // ("10 9 8 ..."). Parentheses are optional.
  static Permutation from_display(std::string_view text);

  std::size_t size() const noexcept { return images_.size(); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  int inverse(int k) const { return inverse_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  // Inverse-image display form; digits run together when d <= 9.
  std::string display() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

bool is_irreducible(const Permutation& p);

// pi' (case C': x[d] > x[pi^-1(d)]) and pi'' (case C'').
Permutation successor_top(const Permutation& p);
Permutation successor_bottom(const Permutation& p);

// Interval exchange of d positive lengths.
struct IET {
  ConeVector lengths;
  Permutation perm;

  IET(ConeVector x, Permutation p, bool require_irreducible = true);
};

Rational iet_eval(const IET& t, const Rational& y);

enum class RauzyCase { Top, Bottom };  // C' and C''

std::string_view to_string(RauzyCase c) noexcept;

// Nonnegative inverse factor of the induction step: elem * x' = x.
IntMatrix rauzy_elem(const Permutation& p, RauzyCase c);

template <class Scalar>
struct RauzyStep {
  BasicConeVector<Scalar> x;
  Permutation perm;
  IntMatrix elem;
  RauzyCase rauzy_case;
};

// One Rauzy induction step. Throws TieBoundary when x[d] == x[pi^-1(d)],
// NotIrreducible for reducible p, InvalidArgument for a non-positive x.
template <class Scalar>
RauzyStep<Scalar> rauzy_step(const BasicConeVector<Scalar>& x, const Permutation& p);

// In-place variant used by the probes; returns the case taken.
template <class Scalar>
RauzyCase rauzy_step_in_place(std::vector<Scalar>& x, Permutation& p);

struct RauzyClass {
  std::vector<Permutation> nodes;      // breadth-first order from the root
  std::vector<std::size_t> succ_top;   // index of pi'
  std::vector<std::size_t> succ_bottom;  // index of pi''

  std::size_t size() const noexcept { return nodes.size(); }
  // Throws UnknownNode.
  std::size_t index_of(const Permutation& p) const;
  std::vector<std::size_t> in_degrees() const;

  nlohmann::json to_json() const;
  std::string to_dot() const;
};

RauzyClass rauzy_class(const Permutation& root);

std::vector<Permutation> loop_permutations(const RauzyClass& c);

// Checks, by iterating T until its first return to the induced interval,
// that the Rauzy step reproduces the first-return map at each sample.
bool verify_first_return(const IET& t, std::span<const Rational> samples, std::size_t max_iterations = 1'000'000);

// Exact Rauzy orbit: stops on budget or at the first tie.
Trajectory rauzy_orbit(const ConeVector& x, const Permutation& p, std::size_t budget);

}  // namespace mcf::iet
