#include "mcf/cone.hpp"

#include <algorithm>
#include <cctype>

namespace mcf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (!is_integer_literal(text)) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text));
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ProbeVector to_probe(const ConeVector& v) {
  std::vector<ProbeReal> out;
  out.reserve(v.dim());
  for (const auto& c : v.coords()) out.push_back(to_probe(c));
  return ProbeVector(std::move(out));
}

ConeVector parse_cone_vector(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coords.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return ConeVector(std::move(coords));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_cone_vector(const ConeVector& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += sep;
    out += format_rational(v[i]);
  }
  return out;
}

bool slab_contains(const ConeVector& v, const Slab& s) {
  const Rational norm = l1_norm(v);
  return s.a <= norm && norm <= s.b;
}

IntMatrix::IntMatrix(std::size_t d) : d_(d), a_(d * d, Integer(0)) {}

IntMatrix::IntMatrix(std::size_t d, std::vector<Integer> row_major) : d_(d), a_(std::move(row_major)) {
  if (a_.size() != d * d) throw Error(ErrorKind::InvalidArgument, "matrix needs d*d entries");
}

IntMatrix IntMatrix::identity(std::size_t d) {
  IntMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::elementary(std::size_t d, std::size_t row, std::size_t col) {
  if (row == col || row >= d || col >= d) {
    throw Error(ErrorKind::InvalidArgument, "elementary factor needs distinct in-range indices");
  }
  IntMatrix m = identity(d);
  m(row, col) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (d_ != rhs.d_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in matrix product");
  IntMatrix out(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t k = 0; k < d_; ++k) {
      const Integer& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < d_; ++j) {
        if (rhs(k, j) != 0) out(i, j) += aik * rhs(k, j);
      }
    }
  }
  return out;
}

void IntMatrix::add_column(std::size_t dst, std::size_t src) {
  for (std::size_t r = 0; r < d_; ++r) (*this)(r, dst) += (*this)(r, src);
}

std::vector<Rational> IntMatrix::apply(std::span<const Rational> x) const {
  if (x.size() != d_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch in matrix-vector product");
  std::vector<Rational> out(d_, Rational(0));
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      if ((*this)(i, j) != 0) out[i] += Rational((*this)(i, j)) * x[j];
    }
  }
  return out;
}

// Fraction-free Bareiss elimination.
Integer IntMatrix::determinant() const {
  if (d_ == 0) return 1;
  std::vector<Integer> m = a_;
  auto at = [&](std::size_t r, std::size_t c) -> Integer& { return m[r * d_ + c]; };
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < d_; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < d_ && at(swap, k) == 0) ++swap;
      if (swap == d_) return 0;
      for (std::size_t c = 0; c < d_; ++c) std::swap(at(k, c), at(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d_; ++i) {
      for (std::size_t j = k + 1; j < d_; ++j) {
        Integer num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = at(k, k);
  }
  return sign * at(d_ - 1, d_ - 1);
}

bool IntMatrix::nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](const Integer& z) { return sgn(z) >= 0; });
}

std::vector<Integer> column_sums(const IntMatrix& m) {
  std::vector<Integer> sums(m.dim(), Integer(0));
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) sums[c] += m(r, c);
  }
  return sums;
}

Integer c_max(const IntMatrix& m) {
  const auto sums = column_sums(m);
  return sums.empty() ? Integer(0) : *std::max_element(sums.begin(), sums.end());
}

bool is_beta_balanced(const IntMatrix& m, const Rational& beta) {
  const auto sums = column_sums(m);
  if (sums.empty()) return true;
  const Rational top(*std::max_element(sums.begin(), sums.end()));
  return std::all_of(sums.begin(), sums.end(), [&](const Integer& c) { return beta * Rational(c) >= top; });
}

ProjectiveDiameter projective_diameter(const IntMatrix& m) {
  const std::size_t d = m.dim();
  Rational best = 1;
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t w = u + 1; w < d; ++w) {
      Rational up = 0;    // max_i u_i / w_i
      Rational down = 0;  // max_i w_i / u_i
      bool any = false;
      for (std::size_t i = 0; i < d; ++i) {
        const Integer& ui = m(i, u);
        const Integer& wi = m(i, w);
        if (ui == 0 && wi == 0) continue;
        if (ui == 0 || wi == 0) return {true, Rational(0)};
        any = true;
        Rational r(ui, wi);
        r.canonicalize();
        if (r > up) up = r;
        Rational s(wi, ui);
        s.canonicalize();
        if (s > down) down = s;
      }
      if (!any) return {true, Rational(0)};
      const Rational spread = up * down;
      if (spread > best) best = spread;
    }
  }
  return {false, best};
}

Slab balanced_image_slab(const IntMatrix& m, const Rational& beta) {
  const Integer top = c_max(m);
  if (top <= 0) throw Error(ErrorKind::InvalidArgument, "matrix has no positive column");
  const auto i = mpz_sizeinbase(top.get_mpz_t(), 2) - 1;
  Integer lo = 1;
  lo <<= i;
  Integer hi = 1;
  hi <<= i + 2;
  return Slab(Rational(lo) / beta, Rational(hi));
}

nlohmann::json matrix_to_json(const IntMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "matrix must be a nonempty array of rows");
  const std::size_t d = j.size();
  std::vector<Integer> entries;
  entries.reserve(d * d);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != d) throw Error(ErrorKind::ParseError, "matrix must be square");
    for (const auto& e : row) {
      if (!e.is_string()) throw Error(ErrorKind::ParseError, "matrix entries are decimal strings");
      entries.push_back(parse_integer(e.get<std::string>()));
    }
  }
  return IntMatrix(d, std::move(entries));
}

}  // namespace mcf
