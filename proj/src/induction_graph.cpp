#include "mcf/induction_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace mcf::graph {

InductionGraph::InductionGraph(std::size_t d, std::vector<GraphNode> nodes) : d_(d), nodes_(std::move(nodes)) {
  if (d_ < 2) throw Error(ErrorKind::InvalidArgument, "induction graph needs d >= 2");
  if (nodes_.empty()) throw Error(ErrorKind::InvalidArgument, "induction graph has no nodes");
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const auto& n = nodes_[k];
    if (n.i < 1 || n.j <= n.i || n.j > static_cast<int>(d_)) {
      throw Error(ErrorKind::InvalidArgument, "node '" + n.id + "' needs 1 <= i < j <= d");
    }
    if (!index_.emplace(n.id, k).second) throw Error(ErrorKind::InvalidArgument, "duplicate node id '" + n.id + "'");
  }
  ge_.reserve(nodes_.size());
  lt_.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    const auto ge = index_.find(n.succ_ge);
    const auto lt = index_.find(n.succ_lt);
    if (ge == index_.end() || lt == index_.end()) {
      throw Error(ErrorKind::InvalidArgument, "node '" + n.id + "' has an unresolved successor");
    }
    ge_.push_back(ge->second);
    lt_.push_back(lt->second);
  }
}

std::size_t InductionGraph::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) throw Error(ErrorKind::UnknownNode, "no node '" + std::string(id) + "'");
  return it->second;
}

InductionGraph InductionGraph::from_json(const nlohmann::json& j) {
  try {
    const auto d = j.at("d").get<std::size_t>();
    std::vector<GraphNode> nodes;
    for (const auto& n : j.at("nodes")) {
      GraphNode node;
      node.id = n.at("id").get<std::string>();
      node.i = n.at("i").get<int>();
      node.j = n.at("j").get<int>();
      node.omega = n.value("omega", std::string{});
      node.succ_ge = n.at("succ_ge").get<std::string>();
      node.succ_lt = n.at("succ_lt").get<std::string>();
      nodes.push_back(std::move(node));
    }
    return InductionGraph(d, std::move(nodes));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("graph spec: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, std::string("graph spec: ") + e.what());
  }
}

nlohmann::json InductionGraph::to_json() const {
  auto nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back(
        {{"id", n.id}, {"i", n.i}, {"j", n.j}, {"omega", n.omega}, {"succ_ge", n.succ_ge}, {"succ_lt", n.succ_lt}});
  }
  return {{"d", d_}, {"nodes", std::move(nodes)}};
}

template <class Scalar>
std::size_t step_in_place(const InductionGraph& g, std::vector<Scalar>& x, std::size_t node, bool* ge_branch) {
  const auto& n = g.node(node);
  Scalar& xi = x[static_cast<std::size_t>(n.i - 1)];
  Scalar& xj = x[static_cast<std::size_t>(n.j - 1)];
  if (xi >= xj) {
    xi -= xj;
    if (ge_branch) *ge_branch = true;
    return g.ge_index(node);
  }
  xj -= xi;
  if (ge_branch) *ge_branch = false;
  return g.lt_index(node);
}

template std::size_t step_in_place<Rational>(const InductionGraph&, std::vector<Rational>&, std::size_t, bool*);
template std::size_t step_in_place<ProbeReal>(const InductionGraph&, std::vector<ProbeReal>&, std::size_t, bool*);

template <class Scalar>
GraphStep<Scalar> induction_step(const InductionGraph& g, const BasicConeVector<Scalar>& x, std::string_view node) {
  if (x.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "state dimension differs from the graph");
  if (!x.strictly_positive()) throw Error(ErrorKind::InvalidArgument, "induction step needs a positive vector");
  const std::size_t from = g.index_of(node);
  std::vector<Scalar> next = x.values();
  bool ge = false;
  const std::size_t to = step_in_place(g, next, from, &ge);
  const auto& n = g.node(from);
  const auto i = static_cast<std::size_t>(n.i - 1);
  const auto j = static_cast<std::size_t>(n.j - 1);
  IntMatrix elem = ge ? IntMatrix::elementary(g.dim(), i, j) : IntMatrix::elementary(g.dim(), j, i);
  return {BasicConeVector<Scalar>(std::move(next)), g.node(to).id, std::move(elem), ge};
}

template GraphStep<Rational> induction_step<Rational>(const InductionGraph&, const ConeVector&, std::string_view);
template GraphStep<ProbeReal> induction_step<ProbeReal>(const InductionGraph&, const ProbeVector&, std::string_view);

Trajectory orbit(const InductionGraph& g, const ConeVector& x, std::string_view node, std::size_t budget) {
  if (x.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "state dimension differs from the graph");
  if (!x.strictly_positive()) throw Error(ErrorKind::InvalidArgument, "orbit needs a positive vector");
  std::size_t at = g.index_of(node);
  Trajectory t(x, g.node(at).id);
  std::vector<Rational> state = x.values();
  for (std::size_t n = 0; n < budget; ++n) {
    const auto& cur = g.node(at);
    bool ge = false;
    at = step_in_place(g, state, at, &ge);
    const auto i = static_cast<std::size_t>(cur.i - 1);
    const auto j = static_cast<std::size_t>(cur.j - 1);
    std::string tag = std::to_string(cur.i) + ":" + std::to_string(cur.j) + (ge ? ":ge" : ":lt");
    if (ge) {
      t.push_elementary(ConeVector(state), g.node(at).id, std::move(tag), i, j);
    } else {
      t.push_elementary(ConeVector(state), g.node(at).id, std::move(tag), j, i);
    }
    if (std::any_of(state.begin(), state.end(), [](const Rational& q) { return sgn(q) == 0; })) {
      t.halt = HaltReason::Tie;
      t.halt_detail = "coordinate reached zero";
      return t;
    }
  }
  t.halt = HaltReason::Budget;
  return t;
}

ProbeOrbit probe_orbit(const InductionGraph& g, const ProbeVector& x, std::string_view node, std::size_t budget,
                       const ProbeReal& axis_eps, const ProbeReal& decay_eps) {
  if (x.dim() != g.dim()) throw Error(ErrorKind::InvalidArgument, "state dimension differs from the graph");
  std::size_t at = g.index_of(node);
  std::vector<ProbeReal> state = x.values();
  const ProbeReal start_max = *std::max_element(state.begin(), state.end());
  ProbeOrbit out;
  out.halt = HaltReason::Budget;
  auto check = [&]() -> bool {
    const auto [lo, hi] = std::minmax_element(state.begin(), state.end());
    out.decay = *hi / start_max;
    if (*lo == 0) {
      out.halt = HaltReason::Tie;
      return true;
    }
    if (decay_eps > 0 && *hi < decay_eps * start_max) {
      out.halt = HaltReason::Decayed;
      return true;
    }
    if (axis_eps > 0 && *lo < axis_eps * *hi) {
      out.halt = HaltReason::Axis;
      return true;
    }
    return false;
  };
  std::size_t n = 0;
  bool stopped = check();
  while (!stopped && n < budget) {
    at = step_in_place(g, state, at);
    ++n;
    stopped = check();
  }
  out.steps = n;
  out.state = ProbeVector(std::move(state));
  out.node = g.node(at).id;
  return out;
}

std::pair<ConeVector, std::string> normalized_step(const InductionGraph& g, const ConeVector& x,
                                                   std::string_view node) {
  if (l1_norm(x) != 1) throw Error(ErrorKind::InvalidArgument, "normalized step needs |x| == 1");
  auto step = induction_step(g, x, node);
  return {project_simplex(step.x), std::move(step.node)};
}

nlohmann::json ValidationReport::to_json() const {
  return {{"has_loop", has_loop},
          {"in_degree_ok", in_degree_ok},
          {"connected", connected},
          {"isolated_set_free", isolated_set_free},
          {"diagnostics", diagnostics}};
}

namespace {

// Every vertex reaches every other, via forward and backward search from 0.
bool strongly_connected(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return true;
  std::vector<std::vector<std::size_t>> rev(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : adj[u]) rev[v].push_back(u);
  }
  auto reaches_all = [n](const std::vector<std::vector<std::size_t>>& edges) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : edges[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reaches_all(adj) && reaches_all(rev);
}

}  // namespace

ValidationReport validate_graph(const InductionGraph& g) {
  ValidationReport r;
  const std::size_t n = g.size();

  for (std::size_t k = 0; k < n; ++k) {
    if (g.ge_index(k) == k || g.lt_index(k) == k) r.has_loop = true;
  }
  if (!r.has_loop) r.diagnostics.push_back("no node has a loop");

  std::vector<std::vector<std::size_t>> incoming(n);
  for (std::size_t k = 0; k < n; ++k) {
    incoming[g.ge_index(k)].push_back(k);
    incoming[g.lt_index(k)].push_back(k);
  }
  r.in_degree_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& in = incoming[k];
    // With a single node both arrows necessarily come from itself.
    const bool ok = in.size() == 2 && (in[0] != in[1] || n == 1);
    if (!ok) {
      r.in_degree_ok = false;
      r.diagnostics.push_back("node '" + g.node(k).id + "' has " + std::to_string(in.size()) +
                              " incoming arrows" + (in.size() == 2 ? " from the same node" : ""));
    }
  }

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t k = 0; k < n; ++k) adj[k] = {g.ge_index(k), g.lt_index(k)};
  r.connected = strongly_connected(adj);
  if (!r.connected) r.diagnostics.push_back("graph is not strongly connected");

  // Column interaction: the ge branch of node (i, j) multiplies by
  // Id + E_{i,j}, feeding column j into column i, and lt feeds i into j. A
  // proper subset with no incoming column is exactly a source component
  // short of the whole set, so the check is strong connectivity.
  std::vector<std::vector<std::size_t>> columns(g.dim());
  for (const auto& node : g.nodes()) {
    const auto i = static_cast<std::size_t>(node.i - 1);
    const auto j = static_cast<std::size_t>(node.j - 1);
    columns[j].push_back(i);
    columns[i].push_back(j);
  }
  r.isolated_set_free = strongly_connected(columns);
  if (!r.isolated_set_free) r.diagnostics.push_back("some proper set of columns receives no other column");
  return r;
}

InductionGraph euclid_graph() { return InductionGraph(2, {{"E", 1, 2, "euclid", "E", "E"}}); }

InductionGraph build_cyclic_example(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "cyclic example needs d >= 2");
  std::vector<GraphNode> nodes;
  for (std::size_t i = 1; i < d; ++i) {
    const auto id = std::to_string(i);
    nodes.push_back({id, static_cast<int>(i), static_cast<int>(i + 1), "cyclic", id, std::to_string(i + 1)});
  }
  const auto last = std::to_string(d);
  nodes.push_back({last, 1, static_cast<int>(d), "cyclic", "1", last});
  return InductionGraph(d, std::move(nodes));
}

std::string rauzy_labeled_id(const iet::Permutation& p, const std::vector<int>& labels) {
  std::string id = p.display() + "|";
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels.size() > 9 && k) id += ' ';
    id += std::to_string(labels[k]);
  }
  return id;
}

InductionGraph rauzy_labeled_graph(const iet::Permutation& root) {
  if (!iet::is_irreducible(root)) throw Error(ErrorKind::NotIrreducible, root.display() + " is reducible");
  const int d = static_cast<int>(root.size());
  using State = std::pair<iet::Permutation, std::vector<int>>;
  std::map<State, std::string> seen;
  std::queue<State> frontier;
  std::vector<GraphNode> nodes;

  auto visit = [&](const State& s) {
    auto [it, inserted] = seen.try_emplace(s, rauzy_labeled_id(s.first, s.second));
    if (inserted) frontier.push(s);
    return it->second;
  };

  std::vector<int> identity(root.size());
  for (int k = 0; k < d; ++k) identity[static_cast<std::size_t>(k)] = k + 1;
  visit({root, identity});
  while (!frontier.empty()) {
    const auto [perm, labels] = frontier.front();
    frontier.pop();
    const int pivot = perm.inverse(d);
    const int a = labels[static_cast<std::size_t>(d - 1)];      // label at position d
    const int b = labels[static_cast<std::size_t>(pivot - 1)];  // label at pi^-1(d)

    std::vector<int> moved(labels.size());
    for (int k = 1; k <= d; ++k) {
      int src;
      if (k <= pivot) {
        src = k;
      } else if (k == pivot + 1) {
        src = d;
      } else {
        src = k - 1;
      }
      moved[static_cast<std::size_t>(k - 1)] = labels[static_cast<std::size_t>(src - 1)];
    }
    const std::string top = visit({iet::successor_top(perm), labels});
    const std::string bottom = visit({iet::successor_bottom(perm), moved});

    GraphNode node;
    node.id = seen.at({perm, labels});
    node.i = std::min(a, b);
    node.j = std::max(a, b);
    node.omega = perm.display();
    // x[i] >= x[j] with i the label at position d is the C' side.
    node.succ_ge = (node.i == a) ? top : bottom;
    node.succ_lt = (node.i == a) ? bottom : top;
    nodes.push_back(std::move(node));
  }
  return InductionGraph(root.size(), std::move(nodes));
}

}  // namespace mcf::graph
