#pragma once

// Combinational gate-level netlist: a DAG of AND/OR/XOR/NOT gates over
// single-driver nets with named input and output ports.
//
// Netlists are assembled once (through NetlistBuilder or Netlist::assemble)
// and are immutable afterwards, so a built netlist may be shared freely
// between threads.

#include "adderlab/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace adderlab {

enum class GateKind : std::uint8_t { And, Or, Xor, Not };

inline constexpr std::array<GateKind, 4> kAllGateKinds = {GateKind::And, GateKind::Or,
                                                          GateKind::Xor, GateKind::Not};

/// Upper-case mnemonic ("AND", "OR", "XOR", "NOT").
std::string_view to_string(GateKind kind) noexcept;
std::optional<GateKind> parse_gate_kind(std::string_view text) noexcept;

/// AND/OR take two or more inputs, XOR exactly two, NOT exactly one.
bool fanin_allowed(GateKind kind, std::size_t fanin) noexcept;

/// Handle to one net. `owner` identifies the netlist (or builder) that issued
/// it; using a handle with another netlist raises UnknownNet.
struct NetId {
  std::uint32_t owner = 0;
  std::uint32_t index = 0;

  friend bool operator==(NetId, NetId) = default;
};

/// Issues a tag no other builder or netlist in this process has used.
std::uint32_t fresh_owner_tag() noexcept;

struct InputDriver {
  std::string port;
};
struct ConstantDriver {
  bool value = false;
};
struct GateDriver {
  std::size_t gate = 0;
};
using Driver = std::variant<InputDriver, ConstantDriver, GateDriver>;

struct Net {
  NetId id;
  Driver driver;
  std::string label;
};

struct Gate {
  GateKind kind = GateKind::And;
  std::vector<NetId> inputs;
  NetId output;
  /// Structural group the gate belongs to ("block0", "inc1", ...); may be empty.
  std::string group;
};

struct Port {
  std::string name;
  NetId net;
};

/// Records one carry-merge OR of a carry-increment adder: the block adder's
/// carry-out and the incrementer's carry-out it combines.
struct CarryMerge {
  NetId block_carry;
  NetId increment_carry;
  std::size_t gate = 0;
};

/// Raw material for Netlist::assemble. Every NetId must carry `owner`.
struct NetlistParts {
  std::uint32_t owner = 0;
  std::string name;
  std::vector<Net> nets;
  std::vector<Gate> gates;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::optional<std::vector<CarryMerge>> carry_merges;
};

using Assignment = std::map<std::string, bool, std::less<>>;

struct EvalResult {
  std::map<std::string, bool, std::less<>> outputs;
  /// Value of every net, indexed by NetId::index. Empty unless requested.
  std::vector<bool> nets;
};

class Netlist {
 public:
  /// Validates structural invariants (references, arity, single driver,
  /// unique port names) and computes the topological order. A cyclic gate
  /// graph is accepted here; topo_order() and the analyses then raise
  /// CombinationalLoop.
  static Netlist assemble(NetlistParts parts);

  const std::string& name() const noexcept { return parts_.name; }
  std::uint32_t owner() const noexcept { return parts_.owner; }
  std::span<const Net> nets() const noexcept { return parts_.nets; }
  std::span<const Gate> gates() const noexcept { return parts_.gates; }
  std::span<const Port> inputs() const noexcept { return parts_.inputs; }
  std::span<const Port> outputs() const noexcept { return parts_.outputs; }
  const std::optional<std::vector<CarryMerge>>& carry_merges() const noexcept {
    return parts_.carry_merges;
  }

  const Net& net(NetId id) const;
  const Port* find_input(std::string_view name) const noexcept;
  const Port* find_output(std::string_view name) const noexcept;

  /// Gate indices such that every gate follows the drivers of its inputs.
  /// Ties are broken by ascending gate index.
  std::span<const std::size_t> topo_order() const;
  bool is_acyclic() const noexcept { return !loop_gate_.has_value(); }

  EvalResult evaluate(const Assignment& assignment, bool keep_nets = false) const;

  /// Bit-parallel simulation of 64 input vectors at once. `input_words[k]`
  /// holds the 64 lane values of input port k (declaration order). Returns one
  /// word per net.
  std::vector<std::uint64_t> simulate(std::span<const std::uint64_t> input_words) const;

  /// Copy of this netlist with one gate's kind replaced (fault injection).
  Netlist with_gate_kind(std::size_t gate, GateKind kind) const;

  const NetlistParts& parts() const noexcept { return parts_; }

 private:
  Netlist() = default;
  void check_owned(NetId id, std::string_view what) const;

  NetlistParts parts_;
  std::vector<std::size_t> order_;
  std::optional<std::size_t> loop_gate_;
};

/// Incremental construction of a netlist. Gates may only reference nets that
/// already exist, so anything built here is acyclic.
class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::string name);

  NetId add_gate(GateKind kind, std::span<const NetId> inputs);
  NetId add_gate(GateKind kind, std::initializer_list<NetId> inputs) {
    return add_gate(kind, std::span<const NetId>(inputs.begin(), inputs.size()));
  }

  /// Creates an input-driven net for the named port.
  NetId declare_input(std::string name);
  /// Exposes an existing net as the named output port; returns `net`.
  NetId declare_output(std::string name, NetId net);

  /// Constant nets are created once per value and reused.
  NetId constant(bool value);

  void set_label(NetId net, std::string label);
  /// Group stamped on every gate added from now on.
  void set_group(std::string group);
  /// Marks the netlist as carrying carry-merge stage metadata (possibly none).
  void enable_stage_metadata();
  /// Adds the OR that merges a block carry with an incrementer carry and
  /// records it as stage metadata.
  NetId add_carry_merge(NetId block_carry, NetId increment_carry);

  std::size_t gate_count() const noexcept { return parts_.gates.size(); }

  /// Finalizes the netlist. Any further mutation raises Frozen.
  Netlist freeze();

 private:
  void check_open() const;
  void check_net(NetId id) const;
  NetId new_net(Driver driver);

  NetlistParts parts_;
  std::string group_;
  std::array<std::optional<NetId>, 2> constants_;
  bool frozen_ = false;
};

}  // namespace adderlab
