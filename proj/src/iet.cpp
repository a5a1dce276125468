#include "mcf/iet.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <queue>

namespace mcf::iet {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)), inverse_(images_.size(), 0) {
  const int d = static_cast<int>(images_.size());
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "empty permutation");
  for (int i = 1; i <= d; ++i) {
    const int v = images_[static_cast<std::size_t>(i - 1)];
    if (v < 1 || v > d || inverse_[static_cast<std::size_t>(v - 1)] != 0) {
      throw Error(ErrorKind::InvalidArgument, "images are not a bijection of 1..d");
    }
    inverse_[static_cast<std::size_t>(v - 1)] = i;
  }
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<int> images(d);
  for (std::size_t i = 0; i < d; ++i) images[i] = static_cast<int>(i + 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_display(std::string_view text) {
  std::string body;
  for (char c : text) {
    if (c != '(' && c != ')') body += c;
  }
  std::vector<int> letters;
  const bool separated = body.find_first_of(", ") != std::string::npos;
  if (separated) {
    std::string token;
    auto flush = [&] {
      if (!token.empty()) letters.push_back(std::stoi(token));
      token.clear();
    };
    for (char c : body) {
      if (c == ',' || c == ' ') {
        flush();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        token += c;
      } else {
        throw Error(ErrorKind::ParseError, "bad permutation text '" + std::string(text) + "'");
      }
    }
    flush();
  } else {
    for (char c : body) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorKind::ParseError, "bad permutation text '" + std::string(text) + "'");
      }
      letters.push_back(c - '0');
    }
  }
  if (letters.empty()) throw Error(ErrorKind::ParseError, "empty permutation text");
  // letters[k-1] = pi^-1(k); invert to images.
  const int d = static_cast<int>(letters.size());
  std::vector<int> images(letters.size(), 0);
  for (int k = 1; k <= d; ++k) {
    const int i = letters[static_cast<std::size_t>(k - 1)];
    if (i < 1 || i > d || images[static_cast<std::size_t>(i - 1)] != 0) {
      throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' is not a permutation");
    }
    images[static_cast<std::size_t>(i - 1)] = k;
  }
  return Permutation(std::move(images));
}

std::string Permutation::display() const {
  std::string out;
  const bool compact = size() <= 9;
  for (std::size_t k = 0; k < size(); ++k) {
    if (!compact && k) out += ' ';
    out += std::to_string(inverse_[k]);
  }
  return out;
}

bool is_irreducible(const Permutation& p) {
  const int d = static_cast<int>(p.size());
  int prefix_max = 0;
  for (int k = 1; k < d; ++k) {
    prefix_max = std::max(prefix_max, p(k));
    if (prefix_max == k) return false;
  }
  return true;
}

Permutation successor_top(const Permutation& p) {
  const int d = static_cast<int>(p.size());
  const int last = p(d);
  std::vector<int> images(p.size());
  for (int j = 1; j <= d; ++j) {
    const int v = p(j);
    int out;
    if (v <= last) {
      out = v;
    } else if (v < d) {
      out = v + 1;
    } else {
      out = last + 1;
    }
    images[static_cast<std::size_t>(j - 1)] = out;
  }
  return Permutation(std::move(images));
}

Permutation successor_bottom(const Permutation& p) {
  const int d = static_cast<int>(p.size());
  const int pivot = p.inverse(d);
  std::vector<int> images(p.size());
  for (int j = 1; j <= d; ++j) {
    int out;
    if (j <= pivot) {
      out = p(j);
    } else if (j == pivot + 1) {
      out = p(d);
    } else {
      out = p(j - 1);
    }
    images[static_cast<std::size_t>(j - 1)] = out;
  }
  return Permutation(std::move(images));
}

IET::IET(ConeVector x, Permutation p, bool require_irreducible) : lengths(std::move(x)), perm(std::move(p)) {
  if (lengths.dim() != perm.size()) throw Error(ErrorKind::InvalidArgument, "lengths and permutation differ in size");
  if (!lengths.strictly_positive()) throw Error(ErrorKind::InvalidArgument, "IET lengths must be positive");
  if (require_irreducible && !is_irreducible(perm)) {
    throw Error(ErrorKind::NotIrreducible, perm.display() + " is reducible");
  }
}

Rational iet_eval(const IET& t, const Rational& y) {
  const auto& x = t.lengths;
  const int d = static_cast<int>(x.dim());
  if (sgn(y) < 0 || y >= l1_norm(x)) throw Error(ErrorKind::OutOfDomain, "point outside [0, |x|)");
  Rational left = 0;  // alpha_{i-1}(x)
  int i = 1;
  while (i < d && y >= left + x[static_cast<std::size_t>(i - 1)]) {
    left += x[static_cast<std::size_t>(i - 1)];
    ++i;
  }
  // alpha_{pi(i)-1}(x^pi) = sum_{k < pi(i)} x[pi^-1(k)]
  Rational target = 0;
  for (int k = 1; k < t.perm(i); ++k) target += x[static_cast<std::size_t>(t.perm.inverse(k) - 1)];
  return y - left + target;
}

std::string_view to_string(RauzyCase c) noexcept { return c == RauzyCase::Top ? "C'" : "C''"; }

IntMatrix rauzy_elem(const Permutation& p, RauzyCase c) {
  const std::size_t d = p.size();
  const std::size_t pivot = static_cast<std::size_t>(p.inverse(static_cast<int>(d)));  // 1-based
  if (c == RauzyCase::Top) return IntMatrix::elementary(d, d - 1, pivot - 1);
  // x[k] = x''[k] (k < pivot), x[pivot] = x''[pivot] + x''[pivot+1],
  // x[k] = x''[k+1] (pivot < k < d), x[d] = x''[pivot+1].
  IntMatrix m(d);
  for (std::size_t k = 1; k <= d; ++k) {
    if (k < pivot) {
      m(k - 1, k - 1) = 1;
    } else if (k == pivot) {
      m(k - 1, k - 1) = 1;
      m(k - 1, k) = 1;
    } else if (k < d) {
      m(k - 1, k) = 1;
    } else {
      m(k - 1, pivot) = 1;
    }
  }
  return m;
}

template <class Scalar>
RauzyCase rauzy_step_in_place(std::vector<Scalar>& x, Permutation& p) {
  const std::size_t d = x.size();
  if (p.size() != d) throw Error(ErrorKind::InvalidArgument, "state and permutation differ in size");
  const std::size_t pivot = static_cast<std::size_t>(p.inverse(static_cast<int>(d)));
  if (pivot == d) throw Error(ErrorKind::NotIrreducible, p.display() + " fixes d");
  Scalar& last = x[d - 1];
  Scalar& other = x[pivot - 1];
  if (last > other) {
    last -= other;
    p = successor_top(p);
    return RauzyCase::Top;
  }
  if (other > last) {
    Scalar moved = last;
    other -= last;
    for (std::size_t k = d - 1; k > pivot; --k) x[k] = x[k - 1];
    x[pivot] = moved;
    p = successor_bottom(p);
    return RauzyCase::Bottom;
  }
  throw Error(ErrorKind::TieBoundary, "x[d] == x[pi^-1(d)] at " + p.display());
}

template <class Scalar>
RauzyStep<Scalar> rauzy_step(const BasicConeVector<Scalar>& x, const Permutation& p) {
  if (!x.strictly_positive()) throw Error(ErrorKind::InvalidArgument, "Rauzy step needs a positive vector");
  if (!is_irreducible(p)) throw Error(ErrorKind::NotIrreducible, p.display() + " is reducible");
  std::vector<Scalar> next = x.values();
  Permutation q = p;
  const RauzyCase c = rauzy_step_in_place(next, q);
  return {BasicConeVector<Scalar>(std::move(next)), std::move(q), rauzy_elem(p, c), c};
}

template RauzyCase rauzy_step_in_place<Rational>(std::vector<Rational>&, Permutation&);
template RauzyCase rauzy_step_in_place<ProbeReal>(std::vector<ProbeReal>&, Permutation&);
template RauzyStep<Rational> rauzy_step<Rational>(const ConeVector&, const Permutation&);
template RauzyStep<ProbeReal> rauzy_step<ProbeReal>(const ProbeVector&, const Permutation&);

std::size_t RauzyClass::index_of(const Permutation& p) const {
  const auto it = std::find(nodes.begin(), nodes.end(), p);
  if (it == nodes.end()) throw Error(ErrorKind::UnknownNode, p.display() + " is not in the class");
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> RauzyClass::in_degrees() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    ++deg[succ_top[i]];
    ++deg[succ_bottom[i]];
  }
  return deg;
}

nlohmann::json RauzyClass::to_json() const {
  nlohmann::json j;
  j["size"] = nodes.size();
  auto list = nlohmann::json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    list.push_back({{"perm", nodes[i].display()},
                    {"images", nodes[i].images()},
                    {"succ_top", nodes[succ_top[i]].display()},
                    {"succ_bottom", nodes[succ_bottom[i]].display()}});
  }
  j["nodes"] = std::move(list);
  auto loops = nlohmann::json::array();
  for (const auto& p : loop_permutations(*this)) loops.push_back(p.display());
  j["loops"] = std::move(loops);
  return j;
}

std::string RauzyClass::to_dot() const {
  std::string out = "digraph rauzy {\n";
  for (const auto& p : nodes) out += "  \"" + p.display() + "\";\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += "  \"" + nodes[i].display() + "\" -> \"" + nodes[succ_top[i]].display() + "\" [label=\"top\"];\n";
    out += "  \"" + nodes[i].display() + "\" -> \"" + nodes[succ_bottom[i]].display() + "\" [label=\"bottom\"];\n";
  }
  out += "}\n";
  return out;
}

RauzyClass rauzy_class(const Permutation& root) {
  if (!is_irreducible(root)) throw Error(ErrorKind::NotIrreducible, root.display() + " is reducible");
  RauzyClass c;
  std::map<Permutation, std::size_t> seen;
  std::queue<std::size_t> frontier;
  auto visit = [&](const Permutation& p) {
    auto [it, inserted] = seen.try_emplace(p, c.nodes.size());
    if (inserted) {
      c.nodes.push_back(p);
      frontier.push(it->second);
    }
    return it->second;
  };
  visit(root);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop();
    const Permutation p = c.nodes[i];
    const std::size_t top = visit(successor_top(p));
    const std::size_t bottom = visit(successor_bottom(p));
    if (edges.size() <= i) edges.resize(i + 1);
    edges[i] = {top, bottom};
  }
  c.succ_top.resize(c.nodes.size());
  c.succ_bottom.resize(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    c.succ_top[i] = edges[i].first;
    c.succ_bottom[i] = edges[i].second;
  }
  return c;
}

std::vector<Permutation> loop_permutations(const RauzyClass& c) {
  std::vector<Permutation> loops;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.succ_top[i] == i || c.succ_bottom[i] == i) loops.push_back(c.nodes[i]);
  }
  return loops;
}

bool verify_first_return(const IET& t, std::span<const Rational> samples, std::size_t max_iterations) {
  const auto step = rauzy_step(t.lengths, t.perm);
  const IET induced(step.x, step.perm, false);
  const Rational window = l1_norm(step.x);
  for (const auto& y : samples) {
    if (sgn(y) < 0 || y >= window) throw Error(ErrorKind::OutOfDomain, "sample outside the induced interval");
    Rational z = iet_eval(t, y);
    std::size_t iterations = 1;
    while (z >= window) {
      if (iterations++ >= max_iterations) throw Error(ErrorKind::NonReturn, "no return within the iteration cap");
      z = iet_eval(t, z);
    }
    if (z != iet_eval(induced, y)) return false;
  }
  return true;
}

Trajectory rauzy_orbit(const ConeVector& x, const Permutation& p, std::size_t budget) {
  if (!is_irreducible(p)) throw Error(ErrorKind::NotIrreducible, p.display() + " is reducible");
  if (!x.strictly_positive()) throw Error(ErrorKind::InvalidArgument, "Rauzy orbit needs a positive vector");
  Trajectory t(x, p.display());
  std::vector<Rational> state = x.values();
  Permutation perm = p;
  for (std::size_t n = 0; n < budget; ++n) {
    const Permutation before = perm;
    RauzyCase c;
    try {
      c = rauzy_step_in_place(state, perm);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::TieBoundary) throw;
      t.halt = HaltReason::Tie;
      t.halt_detail = e.what();
      return t;
    }
    t.push(ConeVector(state), perm.display(), std::string(to_string(c)), rauzy_elem(before, c));
  }
  t.halt = HaltReason::Budget;
  return t;
}

}  // namespace mcf::iet
