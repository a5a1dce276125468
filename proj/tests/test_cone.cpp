#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mcf/cone.hpp"
#include "mcf/measure.hpp"
#include "mcf/random.hpp"
#include "mcf/stats.hpp"

using namespace mcf;

namespace {

Rational Q(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

ConeVector cv(std::initializer_list<Rational> xs) { return ConeVector(std::vector<Rational>(xs)); }

IntMatrix mat(std::size_t d, std::initializer_list<long> entries) {
  std::vector<Integer> v;
  for (long e : entries) v.emplace_back(e);
  return IntMatrix(d, std::move(v));
}

// Leibniz expansion over all permutations.
Integer leibniz_det(const IntMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> p(d);
  std::iota(p.begin(), p.end(), std::size_t{0});
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a + 1; b < d; ++b) inversions += p[a] > p[b];
    }
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t r = 0; r < d; ++r) term *= m(r, p[r]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

IntMatrix random_matrix(std::size_t d, CounterRng& rng, unsigned bound) {
  IntMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = static_cast<unsigned long>(rng.below(bound));
  }
  return m;
}

// Product of `steps` random elementary factors.
IntMatrix random_elementary_product(std::size_t d, std::size_t steps, CounterRng& rng) {
  IntMatrix m = IntMatrix::identity(d);
  for (std::size_t s = 0; s < steps; ++s) {
    const auto a = rng.below(d);
    auto b = rng.below(d - 1);
    if (b >= a) ++b;
    m.add_column(b, a);
  }
  return m;
}

}  // namespace

TEST_CASE("l1 norm and simplex projection") {
  CHECK(l1_norm(cv({0, 0, 0})) == 0);
  CHECK(l1_norm(cv({Rational(1, 2), Rational(1, 3), Rational(1, 6)})) == 1);
  CHECK(l1_norm(cv({2, 3, 4})) == 9);

  CHECK(project_simplex(cv({1, 1})) == cv({Rational(1, 2), Rational(1, 2)}));
  CHECK(project_simplex(cv({2, 3, 4})) == cv({Rational(2, 9), Rational(1, 3), Rational(4, 9)}));
  CHECK(project_simplex(cv({0, 5})) == cv({0, 1}));
  CHECK_THROWS_AS(project_simplex(cv({0, 0})), Error);
}

TEST_CASE("cone vector validation and serialization") {
  CHECK_THROWS_AS(cv({1}), Error);
  CHECK_THROWS_AS(cv({1, -1}), Error);

  const auto v = parse_cone_vector("1/2, 3,4/6");
  CHECK(v == cv({Rational(1, 2), 3, Rational(2, 3)}));
  CHECK(format_cone_vector(v) == "1/2,3,2/3");
  CHECK(format_cone_vector(v, ' ') == "1/2 3 2/3");
  CHECK(parse_cone_vector(format_cone_vector(v)) == v);

  for (const char* bad : {"", "1,,2", "1/0,2", "a,b", "1", "1,-2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_cone_vector(bad), Error);
  }
  try {
    parse_cone_vector("x,1");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("slabs") {
  CHECK(slab_contains(cv({Rational(1, 2), Rational(1, 2)}), Slab(1, 1)));
  CHECK_FALSE(slab_contains(cv({1, 1}), Slab(1, 1)));
  CHECK(slab_contains(cv({2, 3, 4}), Slab(9, 10)));
  CHECK_THROWS_AS(Slab(0, 1), Error);
  CHECK_THROWS_AS(Slab(2, 1), Error);
}

TEST_CASE("column sums, c_max and balance") {
  CHECK(column_sums(IntMatrix::identity(3)) == std::vector<Integer>{1, 1, 1});
  CHECK(c_max(IntMatrix::identity(3)) == 1);
  const auto upper = mat(2, {1, 1, 0, 1});
  const auto lower = mat(2, {1, 0, 1, 1});
  CHECK(column_sums(upper) == std::vector<Integer>{1, 2});
  CHECK(c_max(upper) == 2);
  CHECK(column_sums(lower) == std::vector<Integer>{2, 1});
  CHECK(c_max(lower) == 2);

  CHECK(is_beta_balanced(IntMatrix::identity(4), Rational(101, 100)));
  CHECK_FALSE(is_beta_balanced(upper, Rational(3, 2)));
  CHECK(is_beta_balanced(upper, 2));
}

TEST_CASE("elementary matrices") {
  const auto e = IntMatrix::elementary(3, 0, 2);
  CHECK(e(0, 2) == 1);
  CHECK(e.determinant() == 1);
  CHECK_THROWS_AS(IntMatrix::elementary(3, 1, 1), Error);

  // add_column(dst, src) is right multiplication by Id + E_{src,dst}.
  CounterRng rng(3, 0);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_matrix(4, rng, 9);
    const auto src = rng.below(4);
    auto dst = rng.below(3);
    if (dst >= src) ++dst;
    auto fast = m;
    fast.add_column(dst, src);
    CHECK(fast == m * IntMatrix::elementary(4, src, dst));
  }
}

TEST_CASE("loop powers grow linearly") {
  for (std::size_t d : {2, 3, 5}) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        const auto e = IntMatrix::elementary(d, i, j);
        IntMatrix power = IntMatrix::identity(d);
        for (long k = 1; k <= 64; ++k) {
          power *= e;
          IntMatrix expected = IntMatrix::identity(d);
          expected(i, j) = k;
          REQUIRE(power == expected);
        }
      }
    }
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  CounterRng rng(11, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + rng.below(4);
    const auto m = random_matrix(d, rng, 7);
    REQUIRE(m.determinant() == leibniz_det(m));
  }
  CHECK(mat(2, {1, 1, 1, 1}).determinant() == 0);
  CHECK(mat(3, {0, 1, 0, 1, 0, 0, 0, 0, 1}).determinant() == -1);
}

TEST_CASE("elementary products are unimodular and nonnegative") {
  CounterRng rng(5, 0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + rng.below(4);
    const auto m = random_elementary_product(d, 1 + rng.below(40), rng);
    CHECK(m.determinant() == 1);
    CHECK(m.nonnegative());
  }
}

TEST_CASE("apply") {
  const auto m = mat(3, {1, 0, 1, 0, 1, 0, 0, 0, 1});
  CHECK(m.apply(cv({1, 2, 3})) == cv({4, 2, 3}));
}

TEST_CASE("projective diameter") {
  CHECK(projective_diameter(IntMatrix::identity(2)).infinite);
  const auto two = projective_diameter(mat(2, {1, 1, 1, 2}));
  CHECK_FALSE(two.infinite);
  CHECK(two.value == 2);
  const auto flat = projective_diameter(mat(3, {2, 4, 6, 1, 2, 3, 3, 6, 9}));
  CHECK(flat.value == 1);
  CHECK(flat.below(Rational(101, 100)));
  CHECK_FALSE(projective_diameter(IntMatrix::identity(3)).below(1000));
}

TEST_CASE("projective diameter contracts under positive products") {
  CounterRng rng(17, 0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + rng.below(3);
    IntMatrix a(d), b(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        a(r, c) = static_cast<unsigned long>(1 + rng.below(20));
        b(r, c) = static_cast<unsigned long>(1 + rng.below(20));
      }
    }
    const auto ab = projective_diameter(a * b);
    CHECK(ab.value <= projective_diameter(a).value);
    CHECK(ab.value <= projective_diameter(b).value);
  }
}

TEST_CASE("balanced image slab (size lemma)") {
  CounterRng rng(23, 0);
  const Rational beta = 4;
  std::size_t checked = 0;
  while (checked < 300) {
    const std::size_t d = 2 + rng.below(3);
    const auto m = random_elementary_product(d, 1 + rng.below(30), rng);
    if (!is_beta_balanced(m, beta)) continue;
    const Slab slab = balanced_image_slab(m, beta);
    const auto cmax = c_max(m);
    const auto i = mpz_sizeinbase(cmax.get_mpz_t(), 2) - 1;
    CHECK(slab.a == Rational(Integer(1) << i) / beta);
    CHECK(slab.b == Rational(Integer(1) << (i + 2)));
    // Random v with |v| in [1, 2].
    auto coords = random_dyadic(d, 20, rng);
    const Rational scale = (1 + Q(static_cast<long>(rng.below(1025)), 1024)) / l1_norm(ConeVector(coords));
    for (auto& c : coords) c *= scale;
    const ConeVector v(coords);
    REQUIRE(slab_contains(v, Slab(1, 2)));
    CHECK(slab_contains(m.apply(v), slab));
    ++checked;
  }
}

TEST_CASE("matrix json round trip") {
  auto m = mat(2, {1, 2, 3, 4});
  m(0, 0) = Integer("123456789012345678901234567890");
  const auto j = matrix_to_json(m);
  CHECK(j[0][0] == "123456789012345678901234567890");
  CHECK(matrix_from_json(j) == m);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([["1","x"],["0","1"]])")), Error);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json::parse(R"([["1","2"]])")), Error);
}

TEST_CASE("distortion estimate for the identity matches both sides") {
  CounterRng rng(29, 0);
  const SimplexBall w{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.2};
  const auto e = estimate_distortion(IntMatrix::identity(3), w, 20000, rng);
  CHECK(std::abs(e.ball_fraction - e.image_fraction) < 5 * (e.ball_stderr + e.image_stderr));
  CHECK(e.bound_holds(4, 3, 3));
}

TEST_CASE("wilson interval") {
  const auto none = wilson_interval(0, 100);
  CHECK(none.estimate == 0);
  CHECK(none.ci_lower == 0);
  CHECK(none.ci_upper > 0);
  const auto half = wilson_interval(50, 100);
  CHECK(half.ci_lower < 0.5);
  CHECK(half.ci_upper > 0.5);
  CHECK(half.halfwidth() == doctest::Approx(0.1245).epsilon(0.01));
  const auto one = wilson_interval(1, 1);
  CHECK(one.ci_upper == 1);
  CHECK(one.ci_lower > 0);
}

TEST_CASE("counter rng is a pure function of its key") {
  CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 3, 3);
  for (int i = 0; i < 10; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CounterRng r(9, 0);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
  const auto bits = r.bits(130);
  CHECK(bits < (Integer(1) << 130));
}
