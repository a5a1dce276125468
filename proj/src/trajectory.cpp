#include "mcf/trajectory.hpp"

namespace mcf {

std::string_view to_string(HaltReason h) noexcept {
  switch (h) {
    case HaltReason::Budget: return "BUDGET";
    case HaltReason::Tie: return "TIE";
    case HaltReason::Axis: return "AXIS";
    case HaltReason::Decayed: return "DECAYED";
    case HaltReason::Terminal: return "TERMINAL";
  }
  return "UNKNOWN";
}

void Trajectory::push(ConeVector state, std::string node, std::string tag, const IntMatrix& elem) {
  accumulated *= elem;
  steps.push_back({std::move(state), std::move(node), std::move(tag), c_max(accumulated)});
}

void Trajectory::push_elementary(ConeVector state, std::string node, std::string tag, std::size_t row,
                                 std::size_t col) {
  accumulated.add_column(col, row);
  steps.push_back({std::move(state), std::move(node), std::move(tag), c_max(accumulated)});
}

bool Trajectory::identity_holds() const { return accumulated.apply(final_state()) == initial; }

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "step,node,coords,c_max_accumulated\n";
  auto row = [&](std::size_t step, const std::string& node, const ConeVector& x, const Integer& cm) {
    out += std::to_string(step);
    out += ',';
    out += node;
    out += ',';
    out += format_cone_vector(x, ' ');
    out += ',';
    out += cm.get_str();
    out += '\n';
  };
  row(0, t.initial_node, t.initial, Integer(1));
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    row(i + 1, t.steps[i].node, t.steps[i].state, t.steps[i].c_max);
  }
  return out;
}

}  // namespace mcf
