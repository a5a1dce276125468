#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mcf/cone.hpp"

namespace mcf {

enum class HaltReason {
  Budget,   // step budget exhausted
  Tie,      // a coordinate reached 0 or a comparison tied (exact mode)
  Axis,     // min/max coordinate ratio fell below the axis threshold (probe mode)
  Decayed,  // max coordinate fell below the decay threshold (probe mode)
  Terminal,  // a fixed point or an axis of the map was reached
};

std::string_view to_string(HaltReason h) noexcept;

struct TrajectoryStep {
  ConeVector state;
  std::string node;
  std::string tag;  // which elementary factor produced this step
  Integer c_max;    // of the accumulated matrix after this step
};

// An exact orbit. `accumulated` times the final state equals `initial`.
struct Trajectory {
  ConeVector initial;
  std::string initial_node;
  std::vector<TrajectoryStep> steps;
  IntMatrix accumulated;
  HaltReason halt = HaltReason::Budget;
  std::string halt_detail;

  explicit Trajectory(ConeVector x0 = ConeVector(std::vector<Rational>{0, 0}), std::string node = {})
      : initial(std::move(x0)), initial_node(std::move(node)), accumulated(IntMatrix::identity(initial.dim())) {}

  const ConeVector& final_state() const { return steps.empty() ? initial : steps.back().state; }
  const std::string& final_node() const { return steps.empty() ? initial_node : steps.back().node; }

  // Appends a step whose inverse factor is `elem` (elem * state = previous).
  void push(ConeVector state, std::string node, std::string tag, const IntMatrix& elem);
  // Faster path for elementary factors Id + E_{row,col}.
  void push_elementary(ConeVector state, std::string node, std::string tag, std::size_t row, std::size_t col);

  // accumulated * final == initial, exactly.
  bool identity_holds() const;
};

// CSV with columns step,node,coords,c_max_accumulated; coords are exact
// rationals separated by spaces. Row 0 is the initial state.
std::string trajectory_csv(const Trajectory& t);

}  // namespace mcf
