#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mcf/cone.hpp"
#include "mcf/iet.hpp"
#include "mcf/trajectory.hpp"

namespace mcf::graph {

// Node (i, j, omega) of an induction graph. Coordinates are 1-based, i < j.
// On x[i] >= x[j] the step subtracts x[j] from x[i] and moves to succ_ge;
// otherwise it subtracts x[i] from x[j] and moves to succ_lt.
struct GraphNode {
  std::string id;
  int i = 1;
  int j = 2;
  std::string omega;
  std::string succ_ge;
  std::string succ_lt;
};

class InductionGraph {
 public:
  // Throws InvalidArgument on duplicate ids, bad (i, j) or unresolved
  // successors. Nodes with succ_ge == succ_lt are accepted and reported by
  // validate_graph.
  InductionGraph(std::size_t d, std::vector<GraphNode> nodes);

  static InductionGraph from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const GraphNode& node(std::size_t index) const { return nodes_[index]; }

  // Throws UnknownNode.
  std::size_t index_of(std::string_view id) const;

  std::size_t ge_index(std::size_t index) const { return ge_[index]; }
  std::size_t lt_index(std::size_t index) const { return lt_[index]; }

 private:
  std::size_t d_;
  std::vector<GraphNode> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> ge_;
  std::vector<std::size_t> lt_;
};

template <class Scalar>
struct GraphStep {
  BasicConeVector<Scalar> x;
  std::string node;
  IntMatrix elem;  // elem * x' == x
  bool ge_branch;
};

template <class Scalar>
GraphStep<Scalar> induction_step(const InductionGraph& g, const BasicConeVector<Scalar>& x, std::string_view node);

// Index-based step on a raw coordinate vector; returns the next node index
// and reports the branch taken.
template <class Scalar>
std::size_t step_in_place(const InductionGraph& g, std::vector<Scalar>& x, std::size_t node, bool* ge_branch = nullptr);

// Exact orbit. Halts on budget or as soon as a coordinate reaches zero (TIE).
Trajectory orbit(const InductionGraph& g, const ConeVector& x, std::string_view node, std::size_t budget);

struct ProbeOrbit {
  ProbeVector state;
  std::string node;
  std::size_t steps = 0;
  HaltReason halt = HaltReason::Budget;
  ProbeReal decay;  // max coordinate relative to the starting max coordinate
};

// Probe-mode orbit. Halts with AXIS when min/max < axis_eps (0 disables),
// DECAYED when max < decay_eps * starting max (0 disables), TIE on a zero
// coordinate, BUDGET otherwise.
ProbeOrbit probe_orbit(const InductionGraph& g, const ProbeVector& x, std::string_view node, std::size_t budget,
                       const ProbeReal& axis_eps, const ProbeReal& decay_eps);

// Induction step followed by projection onto the simplex; needs |x| == 1.
// Throws ZeroVector if the step produced the zero vector.
std::pair<ConeVector, std::string> normalized_step(const InductionGraph& g, const ConeVector& x,
                                                   std::string_view node);

struct ValidationReport {
  bool has_loop = false;
  bool in_degree_ok = false;
  bool connected = false;
  bool isolated_set_free = false;
  std::vector<std::string> diagnostics;

  bool all() const { return has_loop && in_degree_ok && connected && isolated_set_free; }
  nlohmann::json to_json() const;
};

ValidationReport validate_graph(const InductionGraph& g);

// d = 2, one node comparing (1, 2), both branches loop.
InductionGraph euclid_graph();

// Nodes 1..d; node i < d compares (i, i+1), loops when x[i] >= x[i+1] and
// moves to i+1 otherwise; node d compares (1, d), loops when x[d] > x[1]
// and moves to node 1 otherwise.
InductionGraph build_cyclic_example(std::size_t d);

// The Rauzy class of `root` with interval labels tracked, as an induction
// graph. Node ids are "<perm display>|<labels by position>".
InductionGraph rauzy_labeled_graph(const iet::Permutation& root);

// Start node of rauzy_labeled_graph for the identity labeling.
std::string rauzy_labeled_id(const iet::Permutation& p, const std::vector<int>& labels);

}  // namespace mcf::graph
