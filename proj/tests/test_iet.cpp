#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "mcf/iet.hpp"
#include "mcf/induction_graph.hpp"
#include "mcf/random.hpp"

using namespace mcf;
using iet::Permutation;
using iet::RauzyCase;

namespace {

Rational Q(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

ConeVector cv(std::initializer_list<Rational> xs) { return ConeVector(std::vector<Rational>(xs)); }
Permutation P(const char* s) { return Permutation::from_display(s); }

std::vector<Permutation> all_permutations(std::size_t d) {
  std::vector<int> images(d);
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

bool irreducible_oracle(const std::vector<int>& images) {
  const std::size_t d = images.size();
  for (std::size_t k = 1; k < d; ++k) {
    if (*std::max_element(images.begin(), images.begin() + static_cast<long>(k)) == static_cast<int>(k)) return false;
  }
  return true;
}

// Two-row combinatorics: top lists interval labels left to right before the
// exchange, bottom after. The winner of a step is the last letter of the row
// with the longer last interval; the loser's last letter is reinserted right
// after the winner in its own row.
struct TwoRow {
  std::vector<int> top;
  std::vector<int> bottom;
};

TwoRow to_two_row(const Permutation& p) {
  TwoRow r;
  const int d = static_cast<int>(p.size());
  for (int i = 1; i <= d; ++i) r.top.push_back(i);
  r.bottom.resize(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) r.bottom[static_cast<std::size_t>(p(i) - 1)] = i;
  return r;
}

// Relabels so that the top row reads 1..d; images[i-1] = position of the
// i-th top letter in the bottom row.
std::vector<int> reduce(const TwoRow& r) {
  const std::size_t d = r.top.size();
  std::vector<int> images(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto pos = std::find(r.bottom.begin(), r.bottom.end(), r.top[i]) - r.bottom.begin();
    images[i] = static_cast<int>(pos) + 1;
  }
  return images;
}

TwoRow two_row_move(TwoRow r, bool top_wins) {
  const int winner = top_wins ? r.top.back() : r.bottom.back();
  auto& loser_row = top_wins ? r.bottom : r.top;
  const int loser = loser_row.back();
  loser_row.pop_back();
  loser_row.insert(std::find(loser_row.begin(), loser_row.end(), winner) + 1, loser);
  return r;
}

std::set<std::vector<int>> two_row_class(const Permutation& root) {
  std::set<std::vector<int>> seen;
  std::deque<TwoRow> queue{to_two_row(root)};
  seen.insert(reduce(queue.front()));
  while (!queue.empty()) {
    const TwoRow r = queue.front();
    queue.pop_front();
    for (bool top : {true, false}) {
      const TwoRow n = two_row_move(r, top);
      if (seen.insert(reduce(n)).second) queue.push_back(n);
    }
  }
  return seen;
}

std::set<std::vector<int>> images_of(const iet::RauzyClass& c) {
  std::set<std::vector<int>> out;
  for (const auto& p : c.nodes) out.insert(p.images());
  return out;
}

// Translation by the independent formula: interval i lands after every
// interval k with pi(k) < pi(i).
Rational eval_oracle(const std::vector<Rational>& x, const Permutation& p, const Rational& y) {
  const int d = static_cast<int>(x.size());
  Rational left = 0;
  for (int i = 1; i <= d; ++i) {
    const Rational& len = x[static_cast<std::size_t>(i - 1)];
    if (y < left + len || i == d) {
      Rational target = 0;
      for (int k = 1; k <= d; ++k) {
        if (p(k) < p(i)) target += x[static_cast<std::size_t>(k - 1)];
      }
      return y - left + target;
    }
    left += len;
  }
  return y;
}

std::vector<Rational> random_lengths(std::size_t d, CounterRng& rng) {
  std::vector<Rational> x;
  for (std::size_t i = 0; i < d; ++i) x.emplace_back(1 + static_cast<long>(rng.below(1000)), 1 + static_cast<long>(rng.below(97)));
  for (auto& v : x) v.canonicalize();
  return x;
}

}  // namespace

TEST_CASE("permutation parsing and display") {
  const auto p = P("231");
  CHECK(p.size() == 3);
  CHECK(p.inverse(1) == 2);
  CHECK(p.inverse(2) == 3);
  CHECK(p.inverse(3) == 1);
  CHECK(p.display() == "231");
  CHECK(P("(2,3,1)") == p);
  CHECK(P("10 9 8 7 6 5 4 3 2 1").display() == "10 9 8 7 6 5 4 3 2 1");
  for (const char* bad : {"", "112", "13", "1a"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(P(bad), Error);
  }
  CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1}), Error);
}

TEST_CASE("irreducibility") {
  CHECK(iet::is_irreducible(P("21")));
  CHECK_FALSE(iet::is_irreducible(Permutation::identity(4)));
  CHECK(iet::is_irreducible(P("231")));
  CHECK(iet::is_irreducible(P("321")));
  CHECK(iet::is_irreducible(P("312")));
  CHECK_FALSE(iet::is_irreducible(P("132")));

  for (std::size_t d = 2; d <= 6; ++d) {
    std::size_t count = 0;
    for (const auto& p : all_permutations(d)) {
      const bool oracle = irreducible_oracle(p.images());
      REQUIRE(iet::is_irreducible(p) == oracle);
      count += oracle;
    }
    // Irreducible permutation counts: 1, 3, 13, 71, 461.
    const std::size_t expected[] = {0, 0, 1, 3, 13, 71, 461};
    CHECK(count == expected[d]);
  }
}

TEST_CASE("iet evaluation") {
  const iet::IET swap(cv({1, 1}), P("21"));
  CHECK(iet::iet_eval(swap, 0) == 1);
  CHECK(iet::iet_eval(swap, Rational(3, 2)) == Rational(1, 2));
  CHECK_THROWS_AS(iet::iet_eval(swap, 2), Error);
  CHECK_THROWS_AS(iet::iet_eval(swap, -1), Error);

  const iet::IET id(cv({1, 2, 3}), Permutation::identity(3), false);
  for (int k = 0; k < 12; ++k) CHECK(iet::iet_eval(id, Q(k, 2)) == Q(k, 2));
  CHECK_THROWS_AS(iet::IET(cv({1, 2, 3}), Permutation::identity(3)), Error);
  CHECK_THROWS_AS(iet::IET(cv({0, 1}), P("21")), Error);
}

TEST_CASE("iet is a bijection that agrees with the translation oracle") {
  CounterRng rng(41, 0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 2 + rng.below(4);
    const auto perms = all_permutations(d);
    const auto& p = perms[rng.below(perms.size())];
    const auto x = random_lengths(d, rng);
    const iet::IET T(ConeVector(x), p, false);
    const Rational total = l1_norm(T.lengths);
    std::set<Rational> images;
    for (int k = 0; k < 40; ++k) {
      const Rational y = total * Q(k, 40);
      const Rational z = iet::iet_eval(T, y);
      CHECK(z == eval_oracle(x, p, y));
      CHECK(z >= 0);
      CHECK(z < total);
      images.insert(z);
    }
    CHECK(images.size() == 40);
  }
}

TEST_CASE("rauzy step examples") {
  auto s = iet::rauzy_step(cv({1, 2, 5}), P("231"));
  CHECK(s.x == cv({1, 2, 4}));
  CHECK(s.perm == P("231"));
  CHECK(s.rauzy_case == RauzyCase::Top);
  CHECK(s.elem.apply(s.x) == cv({1, 2, 5}));

  s = iet::rauzy_step(cv({3, 2, 1}), P("231"));
  CHECK(s.x == cv({2, 1, 2}));
  CHECK(s.perm == P("321"));
  CHECK(s.rauzy_case == RauzyCase::Bottom);
  CHECK(s.elem.apply(s.x) == cv({3, 2, 1}));

  s = iet::rauzy_step(cv({1, 1, 3}), P("312"));
  CHECK(s.x == cv({1, 1, 2}));
  CHECK(s.perm == P("321"));

  CHECK_THROWS_AS(iet::rauzy_step(cv({1, 2, 1}), P("231")), Error);
  CHECK_THROWS_AS(iet::rauzy_step(cv({1, 2, 3}), P("132")), Error);
  CHECK_THROWS_AS(iet::rauzy_step(cv({0, 2, 3}), P("321")), Error);
  try {
    iet::rauzy_step(cv({1, 2, 1}), P("231"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TieBoundary);
  }
}

TEST_CASE("euclid reduction at d = 2") {
  auto s = iet::rauzy_step(cv({2, 5}), P("21"));
  CHECK(s.x == cv({2, 3}));
  CHECK(s.perm == P("21"));
  s = iet::rauzy_step(cv({5, 2}), P("21"));
  CHECK(s.x == cv({3, 2}));
  CHECK(s.perm == P("21"));
}

TEST_CASE("rauzy steps preserve irreducibility and the inverse factor") {
  CounterRng rng(43, 0);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (const auto& p : all_permutations(d)) {
      if (!iet::is_irreducible(p)) continue;
      CHECK(iet::is_irreducible(iet::successor_top(p)));
      CHECK(iet::is_irreducible(iet::successor_bottom(p)));
      for (int t = 0; t < 3; ++t) {
        const ConeVector x(random_lengths(d, rng));
        if (x[d - 1] == x[static_cast<std::size_t>(p.inverse(static_cast<int>(d)) - 1)]) continue;
        const auto s = iet::rauzy_step(x, p);
        REQUIRE(s.elem.apply(s.x) == x);
        CHECK(s.elem.nonnegative());
        CHECK(abs(s.elem.determinant()) == 1);
        CHECK(l1_norm(s.x) < l1_norm(x));
      }
    }
  }
}

TEST_CASE("rauzy classes") {
  const auto c21 = iet::rauzy_class(P("21"));
  CHECK(c21.size() == 1);
  CHECK(c21.succ_top[0] == 0);
  CHECK(c21.succ_bottom[0] == 0);

  const auto c3 = iet::rauzy_class(P("321"));
  CHECK(c3.size() == 3);
  std::set<std::string> names;
  for (const auto& p : c3.nodes) names.insert(p.display());
  CHECK(names == std::set<std::string>{"231", "321", "312"});
  for (auto deg : c3.in_degrees()) CHECK(deg == 2);

  const auto a = iet::rauzy_class(P("4321"));
  const auto b = iet::rauzy_class(P("3412"));
  const auto sa = images_of(a);
  const auto sb = images_of(b);
  std::vector<std::vector<int>> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  CHECK(common.empty());
  CHECK(sa == two_row_class(P("4321")));
  CHECK(sb == two_row_class(P("3412")));
  CHECK(sa.size() == 7);
  CHECK(sb.size() == 6);

  CHECK_THROWS_AS(iet::rauzy_class(P("123")), Error);
}

TEST_CASE("rauzy class closure and regularity against the two-row oracle") {
  for (std::size_t d = 3; d <= 6; ++d) {
    std::set<std::vector<int>> covered;
    for (const auto& p : all_permutations(d)) {
      if (!iet::is_irreducible(p) || covered.count(p.images())) continue;
      const auto c = iet::rauzy_class(p);
      const auto s = images_of(c);
      REQUIRE(s == two_row_class(p));
      covered.insert(s.begin(), s.end());
      for (std::size_t k = 0; k < c.size(); ++k) {
        CHECK(c.nodes[c.succ_top[k]] == iet::successor_top(c.nodes[k]));
        CHECK(c.nodes[c.succ_bottom[k]] == iet::successor_bottom(c.nodes[k]));
      }
      for (auto deg : c.in_degrees()) CHECK(deg == 2);
      CHECK_FALSE(iet::loop_permutations(c).empty());
    }
  }
}

TEST_CASE("loop permutations") {
  const auto loops = iet::loop_permutations(iet::rauzy_class(P("321")));
  std::set<std::string> names;
  for (const auto& p : loops) names.insert(p.display());
  CHECK(names == std::set<std::string>{"231", "312"});
  for (std::size_t d = 3; d <= 5; ++d) {
    for (const auto& p : all_permutations(d)) {
      if (!iet::is_irreducible(p)) continue;
      if (p(static_cast<int>(d) - 1) == static_cast<int>(d)) CHECK(iet::successor_bottom(p) == p);
    }
  }
}

TEST_CASE("class json and dot") {
  const auto c = iet::rauzy_class(P("321"));
  const auto j = c.to_json();
  CHECK(j["nodes"].size() == 3);
  const auto dot = c.to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"321\"") != std::string::npos);
}

TEST_CASE("first return agrees with a brute-force orbit") {
  CounterRng rng(47, 0);
  std::size_t done = 0;
  while (done < 60) {
    const std::size_t d = 3 + rng.below(2);
    const auto perms = all_permutations(d);
    const auto& p = perms[rng.below(perms.size())];
    if (!iet::is_irreducible(p)) continue;
    const auto x = random_lengths(d, rng);
    if (x[d - 1] == x[static_cast<std::size_t>(p.inverse(static_cast<int>(d)) - 1)]) continue;
    const auto s = iet::rauzy_step(ConeVector(x), p);
    const Rational window = l1_norm(s.x);
    std::vector<Rational> samples;
    for (int k = 0; k < 10; ++k) {
      const Rational y = window * Q(static_cast<long>(rng.below(1000)), 1000);
      samples.push_back(y);
      Rational z = eval_oracle(x, p, y);
      for (int guard = 0; z >= window; ++guard) {
        REQUIRE(guard < 1000);
        z = eval_oracle(x, p, z);
      }
      CHECK(z == eval_oracle(s.x.values(), s.perm, y));
    }
    CHECK(iet::verify_first_return(iet::IET(ConeVector(x), p), samples));
    ++done;
  }
}

TEST_CASE("rauzy orbits") {
  const auto t = iet::rauzy_orbit(cv({1, 2, 5}), P("231"), 10);
  CHECK(t.identity_holds());
  CHECK(t.steps.size() <= 10);
  const auto tie = iet::rauzy_orbit(cv({1, 1, 1}), P("321"), 10);
  CHECK(tie.halt == HaltReason::Tie);
  CHECK(tie.steps.empty());

  CounterRng rng(53, 0);
  for (int k = 0; k < 20; ++k) {
    const auto x = random_lengths(4, rng);
    const auto o = iet::rauzy_orbit(ConeVector(x), P("4321"), 200);
    CHECK(o.identity_holds());
    CHECK(o.accumulated.nonnegative());
    CHECK(abs(o.accumulated.determinant()) == 1);
  }
}

TEST_CASE("labeled rauzy graph follows rauzy induction step for step") {
  for (const char* root : {"321", "4321", "3412"}) {
    CAPTURE(root);
    const auto p0 = P(root);
    const auto g = graph::rauzy_labeled_graph(p0);
    CHECK(graph::validate_graph(g).all());
    const std::size_t d = p0.size();
    CounterRng rng(59, 0);
    for (int t = 0; t < 20; ++t) {
      std::vector<Rational> pos = random_lengths(d, rng);
      std::vector<Rational> lab = pos;
      Permutation perm = p0;
      std::vector<int> ident(d);
      std::iota(ident.begin(), ident.end(), 1);
      std::size_t node = g.index_of(graph::rauzy_labeled_id(p0, ident));
      for (int n = 0; n < 100; ++n) {
        try {
          iet::rauzy_step_in_place(pos, perm);
        } catch (const Error&) {
          break;
        }
        node = graph::step_in_place(g, lab, node);
        const auto& id = g.node(node).id;
        const auto bar = id.find('|');
        REQUIRE(id.substr(0, bar) == perm.display());
        for (std::size_t k = 0; k < d; ++k) {
          const int label = id[bar + 1 + k] - '0';
          REQUIRE(pos[k] == lab[static_cast<std::size_t>(label - 1)]);
        }
      }
    }
  }
}
