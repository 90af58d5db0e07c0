#include "adderlab/io.hpp"
#include "io_numbering.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace adderlab {

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string export_dot(const Netlist& netlist) {
  const detail::DenseNumbering dn = detail::number_nets(netlist);
  const auto gates = netlist.gates();
  const auto inputs = netlist.inputs();
  const auto outputs = netlist.outputs();

  // DOT node feeding each net.
  std::vector<std::string> source(netlist.nets().size());
  for (std::size_t k = 0; k < inputs.size(); ++k) source[inputs[k].net.index] = "in" + std::to_string(k);
  for (const Net& net : netlist.nets()) {
    if (std::holds_alternative<ConstantDriver>(net.driver)) {
      source[net.id.index] = "const" + std::to_string(dn.of_net[net.id.index]);
    }
  }
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) {
    source[gates[dn.gate_order[r]].output.index] = "g" + std::to_string(r);
  }

  std::ostringstream out;
  out << "digraph " << quoted(netlist.name()) << " {\n"
      << "  rankdir=LR;\n"
      << "  node [fontname=\"Helvetica\"];\n";
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    out << "  in" << k << " [label=" << quoted(inputs[k].name) << ", shape=invtriangle];\n";
  }
  for (const Net& net : netlist.nets()) {
    if (const auto* c = std::get_if<ConstantDriver>(&net.driver)) {
      out << "  " << source[net.id.index] << " [label=\"" << (c->value ? "1'b1" : "1'b0")
          << "\", shape=plaintext];\n";
    }
  }

  // Gates of one group share a cluster; ungrouped gates sit at top level.
  std::map<std::string, std::vector<std::size_t>> clusters;
  std::vector<std::size_t> loose;
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) {
    const std::string& group = gates[dn.gate_order[r]].group;
    if (group.empty()) {
      loose.push_back(r);
    } else {
      clusters[group].push_back(r);
    }
  }
  auto gate_node = [&](std::size_t r, std::string_view indent) {
    out << indent << "g" << r << " [label=\"" << to_string(gates[dn.gate_order[r]].kind) << "#" << r
        << "\", shape=box];\n";
  };
  for (std::size_t r : loose) gate_node(r, "  ");
  for (const auto& [group, ranks] : clusters) {
    out << "  subgraph " << quoted("cluster_" + group) << " {\n"
        << "    label=" << quoted(group) << ";\n";
    for (std::size_t r : ranks) gate_node(r, "    ");
    out << "  }\n";
  }

  for (std::size_t k = 0; k < outputs.size(); ++k) {
    out << "  out" << k << " [label=" << quoted(outputs[k].name) << ", shape=triangle];\n";
  }
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) {
    for (NetId in : gates[dn.gate_order[r]].inputs) {
      out << "  " << source[in.index] << " -> g" << r << ";\n";
    }
  }
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    out << "  " << source[outputs[k].net.index] << " -> out" << k << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string sanitize_identifier(std::string_view name) {
  std::string id;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_';
    id += ok ? c : '_';
  }
  if (id.empty() || (id.front() >= '0' && id.front() <= '9')) id.insert(id.begin(), '_');
  return id;
}

std::string export_verilog(const Netlist& netlist) {
  const detail::DenseNumbering dn = detail::number_nets(netlist);
  const auto gates = netlist.gates();
  const auto nets = netlist.nets();

  std::set<std::string> taken;
  auto claim = [&](std::string_view raw) {
    std::string id = sanitize_identifier(raw);
    if (!taken.insert(id).second) {
      throw Error(Errc::NameCollisionAfterSanitization,
                  "'" + std::string(raw) + "' maps to identifier '" + id + "' already in use");
    }
    return id;
  };

  // Name carried by each net in the module body.
  std::vector<std::string> wire(nets.size());
  std::vector<std::string> port_ids;
  for (const Port& port : netlist.inputs()) {
    port_ids.push_back(claim(port.name));
    wire[port.net.index] = port_ids.back();
  }
  for (const Net& net : nets) {
    if (const auto* c = std::get_if<ConstantDriver>(&net.driver)) {
      wire[net.id.index] = c->value ? "1'b1" : "1'b0";
    }
  }
  // A gate output exposed as an output port is named by its first such port;
  // any further port on an already-named net gets an assign.
  std::vector<std::pair<std::string, std::uint32_t>> assigns;
  for (const Port& port : netlist.outputs()) {
    port_ids.push_back(claim(port.name));
    if (wire[port.net.index].empty()) {
      wire[port.net.index] = port_ids.back();
    } else {
      assigns.emplace_back(port_ids.back(), port.net.index);
    }
  }
  std::vector<std::string> internal;
  for (std::size_t g : dn.gate_order) {
    const std::uint32_t net = gates[g].output.index;
    if (wire[net].empty()) {
      wire[net] = claim("n" + std::to_string(dn.of_net[net]));
      internal.push_back(wire[net]);
    }
  }
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) claim("g" + std::to_string(r));

  std::ostringstream out;
  out << "module " << sanitize_identifier(netlist.name()) << " (";
  for (std::size_t k = 0; k < port_ids.size(); ++k) {
    out << (k == 0 ? "\n  " : ",\n  ") << port_ids[k];
  }
  out << "\n);\n";
  const std::size_t n_in = netlist.inputs().size();
  for (std::size_t k = 0; k < port_ids.size(); ++k) {
    out << (k < n_in ? "  input " : "  output ") << port_ids[k] << ";\n";
  }
  if (!internal.empty()) out << "\n";
  for (const std::string& w : internal) out << "  wire " << w << ";\n";
  out << "\n";
  for (std::size_t r = 0; r < dn.gate_order.size(); ++r) {
    const Gate& gate = gates[dn.gate_order[r]];
    std::string prim(to_string(gate.kind));
    for (char& c : prim) c = static_cast<char>(c - 'A' + 'a');
    out << "  " << prim << " g" << r << " (" << wire[gate.output.index];
    for (NetId in : gate.inputs) out << ", " << wire[in.index];
    out << ");\n";
  }
  for (const auto& [port, net] : assigns) out << "  assign " << port << " = " << wire[net] << ";\n";
  out << "endmodule\n";
  return out.str();
}

std::string export_csv(const ComparisonTable& table) {
  std::string out = "arch,width,block,gates,delay_gd,verified\n";
  for (const ComparisonRow& row : table.rows) {
    out += std::string(to_string(row.spec.arch)) + "," + std::to_string(row.spec.width) + ",";
    out += is_carry_increment(row.spec.arch) ? std::to_string(row.spec.block_size) : "-";
    out += ",";
    if (row.error.empty()) {
      char delay[64];
      std::snprintf(delay, sizeof delay, "%.2f", row.delay.delay);
      out += std::to_string(row.area.total_gates) + "," + delay;
    } else {
      out += ",";
    }
    out += "," + std::string(to_string(row.verified)) + "\n";
  }
  return out;
}

}  // namespace adderlab
