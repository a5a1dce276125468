#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mcf/errors.hpp"
#include "mcf/numeric.hpp"

namespace mcf {

// A point of the closed positive cone R_+^d, d >= 2.
template <class Scalar>
class BasicConeVector {
 public:
  BasicConeVector() = default;

  explicit BasicConeVector(std::vector<Scalar> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
      throw Error(ErrorKind::InvalidArgument, "cone vector needs d >= 2");
    }
    for (const auto& c : coords_) {
      if (c < 0) throw Error(ErrorKind::InvalidArgument, "cone vector has a negative coordinate");
    }
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Scalar> coords() const noexcept { return coords_; }
  const std::vector<Scalar>& values() const noexcept { return coords_; }

  bool strictly_positive() const {
    for (const auto& c : coords_) {
      if (!(c > 0)) return false;
    }
    return true;
  }

  friend bool operator==(const BasicConeVector&, const BasicConeVector&) = default;

 private:
  std::vector<Scalar> coords_;
};

using ConeVector = BasicConeVector<Rational>;
using ProbeVector = BasicConeVector<ProbeReal>;

template <class Scalar>
Scalar l1_norm(const BasicConeVector<Scalar>& v) {
  Scalar sum = 0;
  for (const auto& c : v.coords()) sum += c;
  return sum;
}

template <class Scalar>
BasicConeVector<Scalar> project_simplex(const BasicConeVector<Scalar>& v) {
  const Scalar norm = l1_norm(v);
  if (norm == 0) throw Error(ErrorKind::ZeroVector, "cannot project the zero vector");
  std::vector<Scalar> out;
  out.reserve(v.dim());
  for (const auto& c : v.coords()) out.push_back(Scalar(c / norm));
  return BasicConeVector<Scalar>(std::move(out));
}

ProbeVector to_probe(const ConeVector& v);

// Comma-separated exact rationals, e.g. "1/2,1/3,1/6".
ConeVector parse_cone_vector(std::string_view text);
std::string format_cone_vector(const ConeVector& v, char sep = ',');

// Closed slab a <= |x| <= b.
struct Slab {
  Rational a;
  Rational b;

  Slab(Rational lo, Rational hi) : a(std::move(lo)), b(std::move(hi)) {
    if (sgn(a) <= 0 || a > b) throw Error(ErrorKind::InvalidArgument, "slab needs 0 < a <= b");
  }
};

bool slab_contains(const ConeVector& v, const Slab& s);

// Square nonnegative-by-convention integer matrix of arbitrary precision.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t d);
  IntMatrix(std::size_t d, std::vector<Integer> row_major);

  static IntMatrix identity(std::size_t d);
  // Id + E_{row,col} (0-based), row != col.
  static IntMatrix elementary(std::size_t d, std::size_t row, std::size_t col);

  std::size_t dim() const noexcept { return d_; }
  Integer& operator()(std::size_t r, std::size_t c) { return a_[r * d_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return a_[r * d_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix& operator*=(const IntMatrix& rhs) { return *this = *this * rhs; }

  // Right multiplication by Id + E_{src,dst}: column dst += column src.
  void add_column(std::size_t dst, std::size_t src);

  std::vector<Rational> apply(std::span<const Rational> x) const;
  ConeVector apply(const ConeVector& x) const { return ConeVector(apply(x.coords())); }

  Integer determinant() const;
  bool nonnegative() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t d_ = 0;
  std::vector<Integer> a_;
};

std::vector<Integer> column_sums(const IntMatrix& m);
Integer c_max(const IntMatrix& m);

// beta * C_j(M) >= C_max(M) for every column j, exactly.
bool is_beta_balanced(const IntMatrix& m, const Rational& beta);

// Exponentiated Hilbert-metric diameter of the image cone M R_+^d.
struct ProjectiveDiameter {
  bool infinite = false;
  Rational value;  // meaningful only when !infinite; always >= 1

  bool below(const Rational& threshold) const { return !infinite && value < threshold; }
};

ProjectiveDiameter projective_diameter(const IntMatrix& m);

// Slab [2^i / beta, 2^{i+2}] that a beta-balanced M with C_max in
// [2^i, 2^{i+1}] maps Delta_{1,2} into; i = floor(log2 C_max).
Slab balanced_image_slab(const IntMatrix& m, const Rational& beta);

nlohmann::json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace mcf
