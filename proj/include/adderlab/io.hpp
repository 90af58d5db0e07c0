#pragma once

// Netlist and report serialization: JSON interchange (round-trippable),
// Graphviz DOT, structural Verilog, and CSV comparison tables.

#include "adderlab/analysis.hpp"
#include "adderlab/netlist.hpp"
#include "adderlab/verify.hpp"

#include <string>
#include <string_view>

namespace adderlab {

inline constexpr int kNetlistFormatVersion = 1;

/// Canonical JSON document: keys sorted, gates in topological order, nets
/// numbered densely (inputs in declaration order, then constants, then gate
/// outputs). Byte-identical for identical netlists.
std::string export_json(const Netlist& netlist);

/// Rebuilds a netlist from export_json output and re-validates every netlist
/// invariant. Throws ParseError, UnsupportedVersion, UnknownGateKind or
/// InvariantViolation.
Netlist import_json(std::string_view text);

std::string export_dot(const Netlist& netlist);

/// Replaces every character outside [A-Za-z0-9_] with '_' (and prefixes '_'
/// when the result would start with a digit).
std::string sanitize_identifier(std::string_view name);

/// One structural module using and/or/xor/not primitives. Throws
/// NameCollisionAfterSanitization when two names map to one identifier.
std::string export_verilog(const Netlist& netlist);

/// Header "arch,width,block,gates,delay_gd,verified", one row per table row.
std::string export_csv(const ComparisonTable& table);

std::string report_to_json(const EquivalenceReport& report);

}  // namespace adderlab
