#include "adderlab/netlist.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <unordered_set>

namespace adderlab {

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Xor: return "XOR";
    case GateKind::Not: return "NOT";
  }
  return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view text) noexcept {
  for (GateKind kind : kAllGateKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

bool fanin_allowed(GateKind kind, std::size_t fanin) noexcept {
  switch (kind) {
    case GateKind::And:
    case GateKind::Or: return fanin >= 2;
    case GateKind::Xor: return fanin == 2;
    case GateKind::Not: return fanin == 1;
  }
  return false;
}

std::uint32_t fresh_owner_tag() noexcept {
  static std::atomic<std::uint32_t> next{1};
  return next.fetch_add(1, std::memory_order_relaxed);
}

namespace {

std::string describe(NetId id) {
  return "net " + std::to_string(id.index) + " (owner " + std::to_string(id.owner) + ")";
}

void check_unique_names(std::span<const Port> ports, std::string_view direction) {
  std::unordered_set<std::string_view> seen;
  for (const Port& port : ports) {
    if (!seen.insert(port.name).second) {
      throw Error(Errc::DuplicatePortName,
                  std::string(direction) + " port '" + port.name + "' declared twice");
    }
  }
}

// Kahn's algorithm with a min-heap so that ties resolve to the lowest gate
// index. Returns the order, or the index of one gate on a cycle.
std::variant<std::vector<std::size_t>, std::size_t> schedule(const NetlistParts& parts) {
  const std::size_t n = parts.gates.size();
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> fanout(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (NetId in : parts.gates[g].inputs) {
      if (const auto* d = std::get_if<GateDriver>(&parts.nets[in.index].driver)) {
        fanout[d->gate].push_back(g);
        ++pending[g];
      }
    }
  }

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t g = 0; g < n; ++g) {
    if (pending[g] == 0) ready.push(g);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t g = ready.top();
    ready.pop();
    order.push_back(g);
    for (std::size_t succ : fanout[g]) {
      if (--pending[succ] == 0) ready.push(succ);
    }
  }
  if (order.size() == n) return order;

  // Every gate left over has an unscheduled driver; walking back through
  // those drivers must revisit a gate, and that gate is on a cycle.
  std::size_t g = 0;
  while (pending[g] == 0) ++g;
  std::vector<bool> visited(n, false);
  while (!visited[g]) {
    visited[g] = true;
    for (NetId in : parts.gates[g].inputs) {
      if (const auto* d = std::get_if<GateDriver>(&parts.nets[in.index].driver);
          d && pending[d->gate] > 0) {
        g = d->gate;
        break;
      }
    }
  }
  return g;
}

}  // namespace

Netlist Netlist::assemble(NetlistParts parts) {
  Netlist nl;
  nl.parts_ = std::move(parts);
  const NetlistParts& p = nl.parts_;

  for (std::size_t i = 0; i < p.nets.size(); ++i) {
    if (p.nets[i].id.owner != p.owner || p.nets[i].id.index != i) {
      throw Error(Errc::InvariantViolation, "net slot " + std::to_string(i) + " holds " +
                                                describe(p.nets[i].id));
    }
  }

  check_unique_names(p.inputs, "input");
  check_unique_names(p.outputs, "output");

  for (const Port& port : p.inputs) {
    nl.check_owned(port.net, "input port '" + port.name + "'");
    const auto* d = std::get_if<InputDriver>(&p.nets[port.net.index].driver);
    if (d == nullptr || d->port != port.name) {
      throw Error(Errc::InvariantViolation,
                  "input port '" + port.name + "' does not drive its net");
    }
  }
  for (const Port& port : p.outputs) nl.check_owned(port.net, "output port '" + port.name + "'");

  for (std::size_t g = 0; g < p.gates.size(); ++g) {
    const Gate& gate = p.gates[g];
    const std::string where = "gate " + std::to_string(g);
    if (!fanin_allowed(gate.kind, gate.inputs.size())) {
      throw Error(Errc::FanInViolation, where + ": " + std::string(to_string(gate.kind)) +
                                            " with " + std::to_string(gate.inputs.size()) +
                                            " inputs");
    }
    for (NetId in : gate.inputs) nl.check_owned(in, where + " input");
    nl.check_owned(gate.output, where + " output");
    const auto* d = std::get_if<GateDriver>(&p.nets[gate.output.index].driver);
    if (d == nullptr || d->gate != g) {
      throw Error(Errc::InvariantViolation,
                  where + " output " + describe(gate.output) + " has another driver");
    }
  }

  for (const Net& net : p.nets) {
    if (const auto* d = std::get_if<GateDriver>(&net.driver);
        d && (d->gate >= p.gates.size() || !(p.gates[d->gate].output == net.id))) {
      throw Error(Errc::InvariantViolation,
                  describe(net.id) + " claims a gate that does not drive it");
    }
    if (const auto* d = std::get_if<InputDriver>(&net.driver)) {
      const Port* port = nl.find_input(d->port);
      if (port == nullptr || !(port->net == net.id)) {
        throw Error(Errc::InvariantViolation,
                    describe(net.id) + " claims undeclared input '" + d->port + "'");
      }
    }
  }

  if (p.carry_merges) {
    for (const CarryMerge& merge : *p.carry_merges) {
      nl.check_owned(merge.block_carry, "carry merge");
      nl.check_owned(merge.increment_carry, "carry merge");
      if (merge.gate >= p.gates.size()) {
        throw Error(Errc::InvariantViolation, "carry merge names missing gate");
      }
    }
  }

  auto scheduled = schedule(p);
  if (auto* order = std::get_if<std::vector<std::size_t>>(&scheduled)) {
    nl.order_ = std::move(*order);
  } else {
    nl.loop_gate_ = std::get<std::size_t>(scheduled);
  }
  return nl;
}

void Netlist::check_owned(NetId id, std::string_view what) const {
  if (id.owner != parts_.owner || id.index >= parts_.nets.size()) {
    throw Error(Errc::UnknownNet, std::string(what) + " references " + describe(id));
  }
}

const Net& Netlist::net(NetId id) const {
  check_owned(id, "lookup");
  return parts_.nets[id.index];
}

const Port* Netlist::find_input(std::string_view name) const noexcept {
  auto it = std::find_if(parts_.inputs.begin(), parts_.inputs.end(),
                         [&](const Port& p) { return p.name == name; });
  return it == parts_.inputs.end() ? nullptr : &*it;
}

const Port* Netlist::find_output(std::string_view name) const noexcept {
  auto it = std::find_if(parts_.outputs.begin(), parts_.outputs.end(),
                         [&](const Port& p) { return p.name == name; });
  return it == parts_.outputs.end() ? nullptr : &*it;
}

std::span<const std::size_t> Netlist::topo_order() const {
  if (loop_gate_) throw CombinationalLoopError(*loop_gate_);
  return order_;
}

std::vector<std::uint64_t> Netlist::simulate(std::span<const std::uint64_t> input_words) const {
  if (input_words.size() != parts_.inputs.size()) {
    throw Error(Errc::MissingInput, "expected " + std::to_string(parts_.inputs.size()) +
                                        " input words, got " +
                                        std::to_string(input_words.size()));
  }
  const auto order = topo_order();

  std::vector<std::uint64_t> value(parts_.nets.size(), 0);
  for (std::size_t k = 0; k < input_words.size(); ++k) {
    value[parts_.inputs[k].net.index] = input_words[k];
  }
  for (const Net& net : parts_.nets) {
    if (const auto* c = std::get_if<ConstantDriver>(&net.driver)) {
      value[net.id.index] = c->value ? ~std::uint64_t{0} : 0;
    }
  }
  for (std::size_t g : order) {
    const Gate& gate = parts_.gates[g];
    std::uint64_t acc = value[gate.inputs.front().index];
    switch (gate.kind) {
      case GateKind::And:
        for (std::size_t i = 1; i < gate.inputs.size(); ++i) acc &= value[gate.inputs[i].index];
        break;
      case GateKind::Or:
        for (std::size_t i = 1; i < gate.inputs.size(); ++i) acc |= value[gate.inputs[i].index];
        break;
      case GateKind::Xor: acc ^= value[gate.inputs[1].index]; break;
      case GateKind::Not: acc = ~acc; break;
    }
    value[gate.output.index] = acc;
  }
  return value;
}

EvalResult Netlist::evaluate(const Assignment& assignment, bool keep_nets) const {
  for (const auto& [name, bit] : assignment) {
    if (find_input(name) == nullptr) {
      throw Error(Errc::UnknownInput, "no input port named '" + name + "'");
    }
  }
  std::vector<std::uint64_t> words;
  words.reserve(parts_.inputs.size());
  for (const Port& port : parts_.inputs) {
    auto it = assignment.find(port.name);
    if (it == assignment.end()) {
      throw Error(Errc::MissingInput, "input port '" + port.name + "' unassigned");
    }
    words.push_back(it->second ? ~std::uint64_t{0} : 0);
  }

  const auto value = simulate(words);
  EvalResult result;
  for (const Port& port : parts_.outputs) {
    result.outputs[port.name] = (value[port.net.index] & 1U) != 0;
  }
  if (keep_nets) {
    result.nets.reserve(value.size());
    for (std::uint64_t w : value) result.nets.push_back((w & 1U) != 0);
  }
  return result;
}

Netlist Netlist::with_gate_kind(std::size_t gate, GateKind kind) const {
  if (gate >= parts_.gates.size()) {
    throw Error(Errc::InvariantViolation, "no gate " + std::to_string(gate));
  }
  NetlistParts copy = parts_;
  copy.gates[gate].kind = kind;
  return assemble(std::move(copy));
}

NetlistBuilder::NetlistBuilder(std::string name) {
  parts_.owner = fresh_owner_tag();
  parts_.name = std::move(name);
}

void NetlistBuilder::check_open() const {
  if (frozen_) throw Error(Errc::Frozen, "netlist '" + parts_.name + "' is already frozen");
}

void NetlistBuilder::check_net(NetId id) const {
  if (id.owner != parts_.owner || id.index >= parts_.nets.size()) {
    throw Error(Errc::UnknownNet, describe(id) + " does not belong to '" + parts_.name + "'");
  }
}

NetId NetlistBuilder::new_net(Driver driver) {
  NetId id{parts_.owner, static_cast<std::uint32_t>(parts_.nets.size())};
  parts_.nets.push_back(Net{id, std::move(driver), {}});
  return id;
}

NetId NetlistBuilder::add_gate(GateKind kind, std::span<const NetId> inputs) {
  check_open();
  if (!fanin_allowed(kind, inputs.size())) {
    throw Error(Errc::FanInViolation, std::string(to_string(kind)) + " cannot take " +
                                          std::to_string(inputs.size()) + " inputs");
  }
  for (NetId in : inputs) check_net(in);
  const std::size_t index = parts_.gates.size();
  NetId out = new_net(GateDriver{index});
  parts_.gates.push_back(Gate{kind, {inputs.begin(), inputs.end()}, out, group_});
  return out;
}

NetId NetlistBuilder::declare_input(std::string name) {
  check_open();
  for (const Port& port : parts_.inputs) {
    if (port.name == name) {
      throw Error(Errc::DuplicatePortName, "input port '" + name + "' declared twice");
    }
  }
  NetId id = new_net(InputDriver{name});
  parts_.inputs.push_back(Port{std::move(name), id});
  return id;
}

NetId NetlistBuilder::declare_output(std::string name, NetId net) {
  check_open();
  check_net(net);
  for (const Port& port : parts_.outputs) {
    if (port.name == name) {
      throw Error(Errc::DuplicatePortName, "output port '" + name + "' declared twice");
    }
  }
  parts_.outputs.push_back(Port{std::move(name), net});
  return net;
}

NetId NetlistBuilder::constant(bool value) {
  check_open();
  auto& slot = constants_[value ? 1 : 0];
  if (!slot) slot = new_net(ConstantDriver{value});
  return *slot;
}

void NetlistBuilder::set_label(NetId net, std::string label) {
  check_open();
  check_net(net);
  parts_.nets[net.index].label = std::move(label);
}

void NetlistBuilder::set_group(std::string group) {
  check_open();
  group_ = std::move(group);
}

void NetlistBuilder::enable_stage_metadata() {
  check_open();
  if (!parts_.carry_merges) parts_.carry_merges.emplace();
}

NetId NetlistBuilder::add_carry_merge(NetId block_carry, NetId increment_carry) {
  NetId merged = add_gate(GateKind::Or, {block_carry, increment_carry});
  enable_stage_metadata();
  parts_.carry_merges->push_back(CarryMerge{block_carry, increment_carry, gate_count() - 1});
  return merged;
}

Netlist NetlistBuilder::freeze() {
  check_open();
  frozen_ = true;
  return Netlist::assemble(std::move(parts_));
}

}  // namespace adderlab
