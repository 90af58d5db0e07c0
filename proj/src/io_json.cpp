#include "adderlab/io.hpp"
#include "io_numbering.hpp"

#include <json.hpp>

#include <algorithm>

namespace adderlab {

using nlohmann::json;

namespace detail {

DenseNumbering number_nets(const Netlist& netlist) {
  DenseNumbering dn;
  dn.gate_order.assign(netlist.topo_order().begin(), netlist.topo_order().end());
  dn.gate_rank.assign(netlist.gates().size(), 0);
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) dn.gate_rank[dn.gate_order[r]] = r;

  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  dn.of_net.assign(netlist.nets().size(), kUnset);
  std::uint32_t next = 0;
  for (const Port& port : netlist.inputs()) dn.of_net[port.net.index] = next++;
  for (const Net& net : netlist.nets()) {
    if (std::holds_alternative<ConstantDriver>(net.driver)) dn.of_net[net.id.index] = next++;
  }
  for (std::size_t g : dn.gate_order) dn.of_net[netlist.gates()[g].output.index] = next++;
  return dn;
}

}  // namespace detail

std::string export_json(const Netlist& netlist) {
  const detail::DenseNumbering dn = detail::number_nets(netlist);
  const auto gates = netlist.gates();

  json doc = json::object();
  doc["format_version"] = kNetlistFormatVersion;
  doc["name"] = netlist.name();

  json inputs = json::array();
  for (const Port& port : netlist.inputs()) {
    inputs.push_back({{"name", port.name}, {"net", dn.of_net[port.net.index]}});
  }
  doc["inputs"] = std::move(inputs);

  json outputs = json::array();
  for (const Port& port : netlist.outputs()) {
    outputs.push_back({{"name", port.name}, {"net", dn.of_net[port.net.index]}});
  }
  doc["outputs"] = std::move(outputs);

  json constants = json::array();
  json labels = json::array();
  for (const Net& net : netlist.nets()) {
    if (const auto* c = std::get_if<ConstantDriver>(&net.driver)) {
      constants.push_back({{"net", dn.of_net[net.id.index]}, {"value", c->value ? 1 : 0}});
    }
    if (!net.label.empty()) {
      labels.push_back({{"net", dn.of_net[net.id.index]}, {"label", net.label}});
    }
  }
  std::sort(constants.begin(), constants.end(),
            [](const json& x, const json& y) { return x["net"] < y["net"]; });
  std::sort(labels.begin(), labels.end(),
            [](const json& x, const json& y) { return x["net"] < y["net"]; });
  doc["constants"] = std::move(constants);
  if (!labels.empty()) doc["labels"] = std::move(labels);

  json gate_list = json::array();
  for (std::size_t g : dn.gate_order) {
    const Gate& gate = gates[g];
    json refs = json::array();
    for (NetId in : gate.inputs) refs.push_back(dn.of_net[in.index]);
    json entry = {{"kind", std::string(to_string(gate.kind))},
                  {"inputs", std::move(refs)},
                  {"output", dn.of_net[gate.output.index]}};
    if (!gate.group.empty()) entry["group"] = gate.group;
    gate_list.push_back(std::move(entry));
  }
  doc["gates"] = std::move(gate_list);

  if (const auto& merges = netlist.carry_merges()) {
    json list = json::array();
    for (const CarryMerge& m : *merges) {
      list.push_back({{"block_carry", dn.of_net[m.block_carry.index]},
                      {"increment_carry", dn.of_net[m.increment_carry.index]},
                      {"gate", dn.gate_rank[m.gate]}});
    }
    doc["carry_merges"] = std::move(list);
  }
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::InvariantViolation, what); }

std::uint32_t net_ref(const json& value, std::size_t net_count, const std::string& where) {
  if (!value.is_number_unsigned()) throw Error(Errc::ParseError, where + ": net must be an index");
  const auto id = value.get<std::uint64_t>();
  if (id >= net_count) {
    invalid(where + ": net " + std::to_string(id) + " outside 0.." +
            std::to_string(net_count) + " (no driver)");
  }
  return static_cast<std::uint32_t>(id);
}

Netlist import_document(const json& doc) {
  if (!doc.is_object()) throw Error(Errc::ParseError, "document is not a JSON object");
  const json& version = doc.at("format_version");
  if (!version.is_number_integer() || version.get<long long>() != kNetlistFormatVersion) {
    throw Error(Errc::UnsupportedVersion, "format_version " + version.dump());
  }

  const json& inputs = doc.at("inputs");
  const json& outputs = doc.at("outputs");
  const json& gates = doc.at("gates");
  const json empty = json::array();
  const json& constants = doc.contains("constants") ? doc.at("constants") : empty;
  const json& labels = doc.contains("labels") ? doc.at("labels") : empty;

  // Every net needs exactly one driver: an input port, a constant or a gate.
  const std::size_t net_count = inputs.size() + constants.size() + gates.size();
  NetlistParts parts;
  parts.owner = fresh_owner_tag();
  parts.name = doc.at("name").get<std::string>();
  std::vector<std::optional<Driver>> drivers(net_count);
  auto claim = [&](const json& ref, Driver driver, const std::string& where) {
    const std::uint32_t id = net_ref(ref, net_count, where);
    if (drivers[id]) invalid(where + ": net " + std::to_string(id) + " has multiple drivers");
    drivers[id] = std::move(driver);
    return id;
  };
  auto handle = [&](std::uint32_t id) { return NetId{parts.owner, id}; };

  for (const json& port : inputs) {
    const auto name = port.at("name").get<std::string>();
    const auto id = claim(port.at("net"), InputDriver{name}, "input '" + name + "'");
    parts.inputs.push_back({name, handle(id)});
  }
  for (const json& c : constants) {
    const auto value = c.at("value").get<int>();
    if (value != 0 && value != 1) throw Error(Errc::ParseError, "constant value must be 0 or 1");
    claim(c.at("net"), ConstantDriver{value == 1}, "constant");
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const json& entry = gates[g];
    const std::string where = "gate " + std::to_string(g);
    const auto kind_name = entry.at("kind").get<std::string>();
    const auto kind = parse_gate_kind(kind_name);
    if (!kind) throw Error(Errc::UnknownGateKind, where + ": '" + kind_name + "'");
    const auto out = claim(entry.at("output"), GateDriver{g}, where);
    Gate gate{*kind, {}, handle(out), entry.value("group", std::string())};
    for (const json& ref : entry.at("inputs")) {
      gate.inputs.push_back(handle(net_ref(ref, net_count, where)));
    }
    parts.gates.push_back(std::move(gate));
  }
  for (std::size_t id = 0; id < net_count; ++id) {
    if (!drivers[id]) invalid("net " + std::to_string(id) + " has no driver");
    parts.nets.push_back(Net{handle(static_cast<std::uint32_t>(id)), std::move(*drivers[id]), {}});
  }
  for (const json& port : outputs) {
    const auto name = port.at("name").get<std::string>();
    parts.outputs.push_back(
        {name, handle(net_ref(port.at("net"), net_count, "output '" + name + "'"))});
  }
  for (const json& l : labels) {
    parts.nets[net_ref(l.at("net"), net_count, "label")].label = l.at("label").get<std::string>();
  }
  if (doc.contains("carry_merges")) {
    parts.carry_merges.emplace();
    for (const json& m : doc.at("carry_merges")) {
      CarryMerge merge{handle(net_ref(m.at("block_carry"), net_count, "carry merge")),
                       handle(net_ref(m.at("increment_carry"), net_count, "carry merge")),
                       m.at("gate").get<std::size_t>()};
      if (merge.gate >= parts.gates.size()) invalid("carry merge names missing gate");
      const Gate& gate = parts.gates[merge.gate];
      if (gate.kind != GateKind::Or || gate.inputs.size() != 2 ||
          !(gate.inputs[0] == merge.block_carry) || !(gate.inputs[1] == merge.increment_carry)) {
        invalid("carry merge does not match its OR gate");
      }
      parts.carry_merges->push_back(merge);
    }
  }

  Netlist netlist = [&] {
    try {
      return Netlist::assemble(std::move(parts));
    } catch (const Error& e) {
      invalid(e.what());
    }
  }();
  if (!netlist.is_acyclic()) {
    try {
      netlist.topo_order();
    } catch (const Error& e) {
      invalid(e.what());
    }
  }
  return netlist;
}

}  // namespace

Netlist import_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    return import_document(doc);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

std::string report_to_json(const EquivalenceReport& report) {
  json doc = json::object();
  doc["mode"] = report.mode == CheckMode::Exhaustive ? "exhaustive" : "random";
  doc["width"] = report.width;
  doc["cases_checked"] = report.cases_checked;
  doc["failure_count"] = report.failure_count;
  json failures = json::array();
  for (const Mismatch& m : report.failures) {
    failures.push_back({{"a", m.a},
                        {"b", m.b},
                        {"cin", m.cin ? 1 : 0},
                        {"expected_sum", m.expected.sum},
                        {"expected_cout", m.expected.cout ? 1 : 0},
                        {"got_sum", m.got.sum},
                        {"got_cout", m.got.cout ? 1 : 0}});
  }
  doc["failures"] = std::move(failures);
  if (report.mode == CheckMode::Random) {
    doc["generator"] = report.generator;
    doc["seed"] = report.seed;
    doc["samples"] = report.samples;
  }
  return doc.dump(2) + "\n";
}

}  // namespace adderlab
