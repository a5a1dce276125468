#include "mcf/selmer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "mcf/parallel.hpp"

namespace mcf::selmer {

namespace {

bool ascending(std::span<const Rational> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] < x[i - 1]) return false;
  }
  return true;
}

std::size_t at(int label) { return static_cast<std::size_t>(label - 1); }

}  // namespace

SortedConeVector::SortedConeVector(ConeVector x) : x_(std::move(x)) {
  if (!ascending(x_.coords())) throw Error(ErrorKind::InvalidArgument, "coordinates are not ascending");
}

bool in_omega(std::span<const Rational> x) {
  if (x.size() < 2 || sgn(x[0]) < 0 || !ascending(x)) return false;
  return x.back() <= x[0] + x[1];
}

OmegaVector::OmegaVector(ConeVector x) : x_(std::move(x)) {
  if (!in_omega(x_.coords())) {
    throw Error(ErrorKind::NotInOmega, format_cone_vector(x_) + " is not in the absorbing cone");
  }
}

TagPermutation::TagPermutation(std::vector<int> letters) : letters_(std::move(letters)) {
  std::vector<int> sorted = letters_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<int>(k + 1)) throw Error(ErrorKind::InvalidArgument, "not a permutation of 1..d");
  }
  if (letters_.empty()) throw Error(ErrorKind::InvalidArgument, "empty permutation");
}

TagPermutation TagPermutation::identity(std::size_t d) {
  std::vector<int> letters(d);
  std::iota(letters.begin(), letters.end(), 1);
  return TagPermutation(std::move(letters));
}

TagPermutation TagPermutation::parse(std::string_view text) {
  std::vector<int> letters;
  const bool separated = text.find_first_of(", ") != std::string_view::npos;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) letters.push_back(std::stoi(token));
    token.clear();
  };
  for (char c : text) {
    if (c == '(' || c == ')' || c == '\'') continue;
    if (c == ',' || c == ' ') {
      flush();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      token += c;
      if (!separated) flush();
    } else {
      throw Error(ErrorKind::ParseError, "bad character in permutation '" + std::string(text) + "'");
    }
  }
  flush();
  try {
    return TagPermutation(std::move(letters));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string TagPermutation::display() const {
  std::string out;
  const bool compact = size() <= 9;
  for (std::size_t k = 0; k < size(); ++k) {
    if (!compact && k) out += ' ';
    out += std::to_string(letters_[k]);
  }
  return out;
}

TagPermutation shift_a(const TagPermutation& t) {
  const auto& l = t.letters();
  std::vector<int> out{l.front()};
  out.push_back(l.back());
  out.insert(out.end(), l.begin() + 1, l.end() - 1);
  return TagPermutation(std::move(out));
}

TagPermutation shift_b(const TagPermutation& t) {
  const auto& l = t.letters();
  std::vector<int> out{l.back()};
  out.insert(out.end(), l.begin(), l.end() - 1);
  return TagPermutation(std::move(out));
}

SelmerStep selmer_step(const SortedConeVector& x) {
  const std::size_t d = x.dim();
  if (sgn(x[0]) == 0) throw Error(ErrorKind::ZeroEntry, "x[1] = 0");
  std::vector<Rational> y = x.vec().values();
  y[d - 1] -= y[0];
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return y[at(a)] < y[at(b)]; });

  std::vector<Rational> next;
  next.reserve(d);
  IntMatrix elem(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = at(order[k]);
    next.push_back(y[src]);
    elem(src, k) += 1;
    if (src == 0) elem(d - 1, k) += 1;
  }
  return {SortedConeVector(ConeVector(std::move(next))), TagPermutation(std::move(order)), std::move(elem)};
}

IntMatrix omega_elem(std::size_t d, Branch b) {
  IntMatrix m(d);
  for (std::size_t k = 1; k + 1 < d; ++k) m(k, k + 1) = 1;
  if (b == Branch::One) {
    m(0, 0) = 1;
  } else {
    m(0, 1) = 1;
  }
  m(d - 1, 0) = 1;
  m(d - 1, 1) = 1;
  return m;
}

Branch omega_step_in_place(std::vector<Rational>& x) {
  const std::size_t d = x.size();
  Rational last = x[d - 1] - x[0];
  const Branch b = (x[d - 1] >= 2 * x[0]) ? Branch::One : Branch::Two;
  for (std::size_t k = d - 1; k >= 2; --k) x[k] = std::move(x[k - 1]);
  if (b == Branch::One) {
    x[1] = std::move(last);
  } else {
    x[1] = x[0];
    x[0] = std::move(last);
  }
  return b;
}

OmegaStep omega_step(const OmegaVector& x) {
  if (sgn(x[0]) == 0) throw Error(ErrorKind::ZeroEntry, "x[1] = 0");
  std::vector<Rational> y = x.vec().values();
  const Branch b = omega_step_in_place(y);
  const std::size_t d = y.size();
  return {OmegaVector(ConeVector(std::move(y))), b, omega_elem(d, b)};
}

void advance_column_sums(std::vector<Integer>& s, Branch b) {
  const std::size_t d = s.size();
  const Integer first = s[0];
  const Integer last = s[d - 1];
  for (std::size_t k = d - 1; k >= 2; --k) s[k] = s[k - 1];
  if (b == Branch::One) {
    s[0] = first + last;
    s[1] = last;
  } else {
    s[0] = last;
    s[1] = first + last;
  }
}

TaggedState tagged_step(const OmegaVector& x, const TagPermutation& tag) {
  if (tag.size() != x.dim()) throw Error(ErrorKind::InvalidArgument, "tag size differs from dimension");
  auto step = omega_step(x);
  return {std::move(step.x), step.branch == Branch::One ? shift_a(tag) : shift_b(tag)};
}

Absorption absorbing_probe(const SortedConeVector& x, std::size_t budget) {
  Absorption out;
  SortedConeVector state = x;
  while (!in_omega(state.vec().coords())) {
    if (out.steps == budget) return out;
    if (sgn(state[0]) == 0) {
      out.stopped_by = ErrorKind::ZeroEntry;
      return out;
    }
    state = selmer_step(state).x;
    ++out.steps;
  }
  out.absorbed = true;
  return out;
}

std::string permutation_path(const TagPermutation& from, const TagPermutation& to) {
  if (from.size() != to.size()) throw Error(ErrorKind::InvalidArgument, "permutations of different sizes");
  std::map<TagPermutation, std::pair<TagPermutation, char>> parent;
  std::deque<TagPermutation> frontier{from};
  parent.emplace(from, std::make_pair(from, '\0'));
  while (!frontier.empty() && !parent.contains(to)) {
    const TagPermutation cur = frontier.front();
    frontier.pop_front();
    for (char w : {'A', 'B'}) {
      TagPermutation next = w == 'A' ? shift_a(cur) : shift_b(cur);
      if (parent.emplace(next, std::make_pair(cur, w)).second) frontier.push_back(std::move(next));
    }
  }
  std::string word;
  for (TagPermutation cur = to; cur != from;) {
    const auto& [prev, w] = parent.at(cur);
    word += w;
    cur = prev;
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::size_t SelmerGraph::index_of(const TagPermutation& t) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.end() || *it != t) throw Error(ErrorKind::UnknownNode, t.display());
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> SelmerGraph::in_degrees() const {
  std::vector<std::size_t> in(nodes.size(), 0);
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    ++in[succ_a[v]];
    ++in[succ_b[v]];
  }
  return in;
}

bool SelmerGraph::regular() const {
  const auto in = in_degrees();
  return std::all_of(in.begin(), in.end(), [](std::size_t k) { return k == 2; });
}

bool SelmerGraph::strongly_connected() const {
  const std::size_t n = nodes.size();
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> fwd(n), back(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : {succ_a[v], succ_b[v]}) {
      fwd[v].push_back(w);
      back[w].push_back(v);
    }
  }
  auto reaches_all = [n](const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n;
  };
  return reaches_all(fwd) && reaches_all(back);
}

SelmerGraph selmer_graph(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "selmer graph needs d >= 2");
  if (d > 8) throw Error(ErrorKind::DimensionTooLarge, "selmer graph is limited to d <= 8");
  SelmerGraph g;
  std::vector<int> letters(d);
  std::iota(letters.begin(), letters.end(), 1);
  do {
    g.nodes.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  for (const auto& t : g.nodes) {
    g.succ_a.push_back(g.index_of(shift_a(t)));
    g.succ_b.push_back(g.index_of(shift_b(t)));
  }
  return g;
}

Trajectory selmer_orbit(const SortedConeVector& x, std::size_t budget) {
  TagPermutation tag = TagPermutation::identity(x.dim());
  Trajectory traj(x.vec(), tag.display());
  SortedConeVector state = x;
  for (std::size_t n = 0; n < budget; ++n) {
    if (sgn(state[0]) == 0) {
      traj.halt = HaltReason::Tie;
      traj.halt_detail = "x[1] = 0";
      return traj;
    }
    auto step = selmer_step(state);
    std::vector<int> letters(tag.size());
    for (std::size_t k = 0; k < letters.size(); ++k) letters[k] = tag[at(step.sigma[k])];
    tag = TagPermutation(std::move(letters));
    traj.push(step.x.vec(), tag.display(), "S", step.elem);
    state = std::move(step.x);
  }
  return traj;
}

Trajectory omega_orbit(const OmegaVector& x, std::size_t budget) {
  TagPermutation tag = TagPermutation::identity(x.dim());
  Trajectory traj(x.vec(), tag.display());
  OmegaVector state = x;
  for (std::size_t n = 0; n < budget; ++n) {
    if (sgn(state[0]) == 0) {
      traj.halt = HaltReason::Tie;
      traj.halt_detail = "x[1] = 0";
      return traj;
    }
    auto step = omega_step(state);
    tag = step.branch == Branch::One ? shift_a(tag) : shift_b(tag);
    traj.push(step.x.vec(), tag.display(), step.branch == Branch::One ? "ONE" : "TWO", step.elem);
    state = std::move(step.x);
  }
  return traj;
}

std::vector<Rational> random_omega_point(std::size_t d, CounterRng& rng) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "need d >= 2");
  constexpr unsigned kLowBits = 512;
  for (;;) {
    auto u = uniform_simplex(d, rng);
    std::sort(u.begin(), u.end());
    if (u.back() > u[0] + u[1]) continue;
    std::vector<Rational> k;
    k.reserve(d);
    Rational total = 0;
    for (double v : u) {
      Rational q = dyadic_from_double(v, 53);
      q *= Rational(Integer(1) << kLowBits);
      q += Rational(rng.bits(kLowBits));
      total += q;
      k.push_back(std::move(q));
    }
    std::sort(k.begin(), k.end());
    if (sgn(k[0]) <= 0 || !in_omega(k)) continue;
    for (auto& q : k) q /= total;
    return k;
  }
}

JacobianCheck jacobian_bounds(std::span<const Rational> u, std::span<const Rational> w) {
  const std::size_t d = u.size();
  if (w.size() != d || d < 2) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const Rational lo(1, 2 * static_cast<unsigned long>(d));
  const Rational hi(2, static_cast<unsigned long>(d + 1));
  JacobianCheck out;
  for (std::size_t i = 1; i < d; ++i) {
    if (u[i] < lo || u[i] > hi || w[i] < lo || w[i] > hi) out.range_ok = false;
    if (sgn(w[i]) == 0 || u[i] * 4 < w[i] || u[i] > 4 * w[i]) out.ratios_ok = false;
  }
  return out;
}

bool PropertySuiteReport::passed() const {
  return closure_violations == 0 && identity_violations == 0 && tag_violations == 0 && half_decay_violations == 0 &&
         combine_violations == 0 && jacobian_ratio_violations == 0 && jacobian_range_violations == 0;
}

nlohmann::json PropertySuiteReport::to_json() const {
  nlohmann::json avoid = nlohmann::json::array();
  for (const auto& [n, f] : critical_avoidance) avoid.push_back({{"length", n}, {"fraction", f}});
  return {
      {"d", config.d},
      {"trials", config.trials},
      {"budget", config.budget},
      {"seed", config.seed},
      {"orbits", orbits},
      {"excluded", excluded},
      {"steps", steps},
      {"closure_violations", closure_violations},
      {"identity_violations", identity_violations},
      {"tag_violations", tag_violations},
      {"half_decay", {{"checks", half_decay_checks}, {"violations", half_decay_violations}}},
      {"combine", {{"checks", combine_checks}, {"violations", combine_violations}}},
      {"combine_statement_reading",
       {{"checks", combine_statement_checks}, {"violations", combine_statement_violations}}},
      {"jacobian",
       {{"pairs", jacobian_pairs},
        {"ratio_violations", jacobian_ratio_violations},
        {"range_violations", jacobian_range_violations}}},
      {"critical_avoidance", avoid},
      {"passed", passed()},
  };
}

namespace {

struct OrbitCounts {
  bool excluded = false;
  std::size_t steps = 0;
  std::size_t closure = 0;
  std::size_t identity = 0;
  std::size_t tag = 0;
  std::size_t half_checks = 0;
  std::size_t half_bad = 0;
  std::size_t combine_checks = 0;
  std::size_t combine_bad = 0;
  std::size_t statement_checks = 0;
  std::size_t statement_bad = 0;
  std::size_t first_d_visit = 0;  // 0 when label d never reached slot 1
};

OrbitCounts property_orbit(std::size_t d, std::size_t budget, CounterRng& rng) {
  OrbitCounts c;
  const std::vector<Rational> v = random_omega_point(d, rng);
  std::vector<Rational> x = v;
  TagPermutation tag = TagPermutation::identity(d);
  std::vector<Rational> letter_value = v;  // second representation, by label
  std::vector<std::optional<Rational>> last_critical(d);
  last_critical[at(tag[0])] = x[0];
  int prev_critical = tag[0];
  const Rational proof_bound = v[0] + v[1] - v[d - 1];
  const Rational statement_bound = v[d - 1] - v[0] - v[1];
  bool d_visited = false;

  for (std::size_t i = 1; i <= budget; ++i) {
    if (sgn(x[0]) == 0) {
      c.excluded = true;
      return c;
    }
    const std::vector<Rational> before = x;
    letter_value[at(tag[d - 1])] -= x[0];
    const Branch b = omega_step_in_place(x);
    tag = b == Branch::One ? shift_a(tag) : shift_b(tag);
    ++c.steps;

    if (!in_omega(x)) ++c.closure;
    if (omega_elem(d, b).apply(x) != before) ++c.identity;
    for (std::size_t k = 0; k < d; ++k) {
      if (x[k] != letter_value[at(tag[k])]) {
        ++c.tag;
        break;
      }
    }

    const int critical = tag[0];
    if (critical != prev_critical) {
      auto& last = last_critical[at(critical)];
      if (last) {
        ++c.half_checks;
        if (2 * x[0] > *last) ++c.half_bad;
      }
      last = x[0];
      prev_critical = critical;
    }
    if (critical == static_cast<int>(d) && !d_visited) {
      d_visited = true;
      c.first_d_visit = i;
    }

    if (i % (d - 1) == 0) {
      const Rational s = x[0] + x[1];
      if (s < proof_bound) {
        ++c.combine_checks;
        if (!d_visited) ++c.combine_bad;
      }
      if (s < statement_bound) {
        ++c.statement_checks;
        if (!d_visited) ++c.statement_bad;
      }
    }
  }
  return c;
}

}  // namespace

PropertySuiteReport selmer_property_suite(const PropertySuiteConfig& cfg) {
  if (cfg.d < 3) throw Error(ErrorKind::InvalidArgument, "property suite needs d >= 3");
  PropertySuiteReport r;
  r.config = cfg;
  const auto orbits = run_trials<OrbitCounts>(cfg.trials, cfg.threads, [&](std::size_t t) {
    CounterRng rng(cfg.seed, t, 0);
    return property_orbit(cfg.d, cfg.budget, rng);
  });

  std::vector<std::size_t> lengths;
  for (std::size_t n : {10, 50, 100, 200, 500, 1000}) {
    if (n <= cfg.budget) lengths.push_back(n);
  }
  std::vector<std::size_t> avoiders(lengths.size(), 0);
  for (const auto& c : orbits) {
    if (c.excluded) {
      ++r.excluded;
      continue;
    }
    ++r.orbits;
    r.steps += c.steps;
    r.closure_violations += c.closure;
    r.identity_violations += c.identity;
    r.tag_violations += c.tag;
    r.half_decay_checks += c.half_checks;
    r.half_decay_violations += c.half_bad;
    r.combine_checks += c.combine_checks;
    r.combine_violations += c.combine_bad;
    r.combine_statement_checks += c.statement_checks;
    r.combine_statement_violations += c.statement_bad;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      if (c.first_d_visit == 0 || c.first_d_visit > lengths[k]) ++avoiders[k];
    }
  }
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    const double f = r.orbits ? static_cast<double>(avoiders[k]) / static_cast<double>(r.orbits) : 0.0;
    r.critical_avoidance.emplace_back(lengths[k], f);
  }

  const auto pairs = run_trials<JacobianCheck>(cfg.jacobian_pairs, cfg.threads, [&](std::size_t t) {
    CounterRng rng(cfg.seed, t, 1);
    const auto u = random_omega_point(cfg.d, rng);
    for (;;) {
      auto w = random_omega_point(cfg.d, rng);
      const Rational scale = (1 - u[0]) / (1 - w[0]);
      w[0] = u[0];
      for (std::size_t i = 1; i < w.size(); ++i) w[i] *= scale;
      if (in_omega(w)) return jacobian_bounds(u, w);
    }
  });
  r.jacobian_pairs = pairs.size();
  for (const auto& p : pairs) {
    if (!p.ratios_ok) ++r.jacobian_ratio_violations;
    if (!p.range_ok) ++r.jacobian_range_violations;
  }
  return r;
}

nlohmann::json BalanceReport::to_json() const {
  return {
      {"estimate", estimate.estimate},
      {"ci_halfwidth", estimate.halfwidth()},
      {"ci_lower", estimate.ci_lower},
      {"ci_upper", estimate.ci_upper},
      {"confidence", 0.99},
      {"hits", estimate.hits},
      {"trials", config.trials},
      {"counted", estimate.trials},
      {"excluded", excluded},
      {"horizon_misses", horizon_hits},
      {"seed", config.seed},
      {"params",
       {{"algo", "selmer"},
        {"d", config.d},
        {"beta", format_rational(config.beta)},
        {"K", format_rational(config.k)},
        {"past_max", config.past_max},
        {"identity_past", config.identity_past},
        {"horizon", config.horizon}}},
  };
}

namespace {

enum class Outcome { Hit, Miss, Horizon, Excluded };

// Extreme rays of Omega_d, normalized to the simplex.
std::vector<std::vector<double>> omega_vertices(std::size_t d) {
  std::vector<std::vector<double>> out;
  out.emplace_back(d, 1.0 / static_cast<double>(d));
  std::vector<double> v(d, 1.0 / static_cast<double>(d - 1));
  v[0] = 0;
  out.push_back(v);
  for (std::size_t k = 2; k < d; ++k) {
    const double norm = static_cast<double>(k + 2 * (d - k));
    std::vector<double> w(d, 2.0 / norm);
    for (std::size_t i = 0; i < k; ++i) w[i] = 1.0 / norm;
    out.push_back(std::move(w));
  }
  return out;
}

// Draws from the density proportional to (C . v)^-d on Omega_1 by rejection
// against the uniform law, using the exact minimum of C . v over the vertices.
std::vector<Rational> sample_conditional(const std::vector<Integer>& sums, CounterRng& rng) {
  const std::size_t d = sums.size();
  const Integer top = *std::max_element(sums.begin(), sums.end());
  std::vector<double> c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = Rational(sums[j], top).get_d();
  double floor_value = std::numeric_limits<double>::infinity();
  for (const auto& vert : omega_vertices(d)) {
    floor_value = std::min(floor_value, std::inner_product(c.begin(), c.end(), vert.begin(), 0.0));
  }
  for (;;) {
    auto v = random_omega_point(d, rng);
    double cv = 0;
    for (std::size_t j = 0; j < d; ++j) cv += c[j] * v[j].get_d();
    const double accept = std::pow(floor_value / cv, static_cast<double>(d));
    if (rng.uniform01() < accept) return v;
  }
}

Outcome balance_trial(const BalanceConfig& cfg, std::size_t trial) {
  const std::size_t d = cfg.d;
  CounterRng past_rng(cfg.seed, trial, 0);
  std::vector<Integer> sums(d, 1);
  if (!cfg.identity_past) {
    std::vector<Rational> x = random_omega_point(d, past_rng);
    const std::size_t n = past_rng.below(cfg.past_max + 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(x[0]) == 0) return Outcome::Excluded;
      advance_column_sums(sums, omega_step_in_place(x));
    }
  }
  CounterRng rng(cfg.seed, trial, 1);
  std::vector<Rational> x = sample_conditional(sums, rng);
  const Integer start = *std::max_element(sums.begin(), sums.end());
  Rational limit = start;
  for (std::size_t i = 0; i < d; ++i) limit *= cfg.k;

  for (std::size_t m = 0; m < cfg.horizon; ++m) {
    if (sgn(x[0]) == 0) return Outcome::Excluded;
    advance_column_sums(sums, omega_step_in_place(x));
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    if (Rational(*hi) >= limit) return Outcome::Miss;
    if (cfg.beta * *lo >= *hi) return Outcome::Hit;
  }
  return Outcome::Horizon;
}

}  // namespace

BalanceReport balance_hitting_estimate(const BalanceConfig& cfg) {
  if (cfg.d < 3) throw Error(ErrorKind::InvalidArgument, "balance estimate needs d >= 3");
  if (cfg.beta <= 1 || cfg.k <= 1) throw Error(ErrorKind::InvalidArgument, "beta and K must exceed 1");
  if (cfg.trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  const auto outcomes =
      run_trials<Outcome>(cfg.trials, cfg.threads, [&](std::size_t t) { return balance_trial(cfg, t); });
  BalanceReport r;
  r.config = cfg;
  std::size_t hits = 0, counted = 0;
  for (Outcome o : outcomes) {
    switch (o) {
      case Outcome::Hit:
        ++hits;
        ++counted;
        break;
      case Outcome::Miss:
        ++counted;
        break;
      case Outcome::Horizon:
        ++counted;
        ++r.horizon_hits;
        break;
      case Outcome::Excluded:
        ++r.excluded;
        break;
    }
  }
  r.estimate = wilson_interval(hits, counted);
  return r;
}

}  // namespace mcf::selmer
