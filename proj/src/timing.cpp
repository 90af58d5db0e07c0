#include "adderlab/timing.hpp"

#include <algorithm>
#include <cmath>

namespace adderlab {

DelayModel DelayModel::unit() { return DelayModel{}; }

DelayModel DelayModel::log2() {
  DelayModel model;
  model.name = "log2";
  model.fanin_penalty = FaninPenalty::Log2;
  return model;
}

void DelayModel::validate() const {
  for (GateKind kind : kAllGateKinds) {
    const double d = base_delay(kind);
    if (!std::isfinite(d) || d < 0.0) {
      throw Error(Errc::BadDelayModel, "model '" + name + "' gives " +
                                           std::string(to_string(kind)) + " delay " +
                                           std::to_string(d));
    }
  }
}

double DelayModel::base_delay(GateKind kind) const noexcept {
  return base[static_cast<std::size_t>(kind)];
}

double DelayModel::gate_delay(const Gate& gate) const noexcept {
  const double d = base_delay(gate.kind);
  if (fanin_penalty == FaninPenalty::None) return d;
  // ceil(log2(n)) for n >= 2, computed exactly on integers.
  std::size_t fanin = std::max<std::size_t>(gate.inputs.size(), 2);
  unsigned levels = 0;
  for (std::size_t reach = 1; reach < fanin; reach <<= 1) ++levels;
  return d * levels;
}

CriticalPath critical_path(const Netlist& netlist, const DelayModel& model) {
  model.validate();
  const auto order = netlist.topo_order();
  const auto gates = netlist.gates();

  CriticalPath result;
  result.arrival.assign(netlist.nets().size(), 0.0);
  for (std::size_t g : order) {
    double latest = 0.0;
    for (NetId in : gates[g].inputs) latest = std::max(latest, result.arrival[in.index]);
    result.arrival[gates[g].output.index] = latest + model.gate_delay(gates[g]);
  }

  const Port* sink = nullptr;
  for (const Port& port : netlist.outputs()) {
    if (sink == nullptr || result.arrival[port.net.index] > result.arrival[sink->net.index]) {
      sink = &port;
    }
  }
  if (sink == nullptr) return result;
  result.delay = result.arrival[sink->net.index];

  NetId at = sink->net;
  while (const auto* d = std::get_if<GateDriver>(&netlist.nets()[at.index].driver)) {
    result.path.push_back(d->gate);
    const Gate& gate = gates[d->gate];
    NetId worst = gate.inputs.front();
    for (NetId in : gate.inputs) {
      if (result.arrival[in.index] > result.arrival[worst.index]) worst = in;
    }
    at = worst;
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

}  // namespace adderlab
