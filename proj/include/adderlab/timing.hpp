#pragma once

// Longest-path timing over a combinational netlist.

#include "adderlab/netlist.hpp"

#include <array>
#include <string>
#include <vector>

namespace adderlab {

enum class FaninPenalty { None, Log2 };

/// Delay of each gate kind in dimensionless gate-delays. With the Log2
/// penalty a gate costs base * ceil(log2(max(fanin, 2))).
struct DelayModel {
  std::string name = "unit";
  std::array<double, 4> base = {1.0, 1.0, 1.0, 1.0};  // indexed by GateKind
  FaninPenalty fanin_penalty = FaninPenalty::None;

  static DelayModel unit();
  static DelayModel log2();

  /// Throws BadDelayModel when any base delay is negative or not finite.
  void validate() const;
  double base_delay(GateKind kind) const noexcept;
  double gate_delay(const Gate& gate) const noexcept;
};

struct CriticalPath {
  double delay = 0.0;
  /// Gate indices from the path's source side to the output port.
  std::vector<std::size_t> path;
  /// Arrival time of every net, indexed by NetId::index.
  std::vector<double> arrival;
};

/// Inputs and constants arrive at 0; a gate output arrives at the latest
/// input arrival plus the gate delay. The reported delay is the latest
/// output-port arrival, and the path is one chain that realizes it (ties go to
/// the earliest output port, then to the lowest input position).
CriticalPath critical_path(const Netlist& netlist, const DelayModel& model);

}  // namespace adderlab
