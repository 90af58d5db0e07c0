#pragma once

// Technology-independent area and delay reports, and side-by-side comparison
// of adder architectures.

#include "adderlab/adders.hpp"
#include "adderlab/netlist.hpp"
#include "adderlab/timing.hpp"
#include "adderlab/verify.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace adderlab {

/// Raw gate census. Kinds that do not occur are absent from `counts`.
struct AreaReport {
  std::map<GateKind, std::size_t> counts;
  std::size_t total_gates = 0;
  /// Gates per structural group, for netlists whose gates carry one.
  std::map<std::string, std::size_t> by_block;

  friend bool operator==(const AreaReport&, const AreaReport&) = default;
};

struct PathStep {
  std::size_t gate = 0;
  GateKind kind = GateKind::And;
  double arrival = 0.0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct DelayReport {
  std::string model_name;
  double delay = 0.0;
  std::vector<PathStep> path;

  friend bool operator==(const DelayReport&, const DelayReport&) = default;
};

enum class Verification { Passed, Failed, Skipped };

/// "true", "false", "skipped".
std::string_view to_string(Verification v) noexcept;

struct ComparisonRow {
  AdderSpec spec;
  AreaReport area;
  DelayReport delay;
  Verification verified = Verification::Skipped;
  /// Set when the spec could not be built; area and delay are then empty.
  std::string error;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonTable {
  std::string model_name;
  std::vector<ComparisonRow> rows;

  friend bool operator==(const ComparisonTable&, const ComparisonTable&) = default;
};

/// Widths up to this bound are verified exhaustively by compare().
inline constexpr unsigned kCompareExhaustiveWidth = 12;

AreaReport area_report(const Netlist& netlist);
DelayReport delay_report(const Netlist& netlist, const DelayModel& model);

/// Builds and measures each spec in request order. With `verify`, rows of
/// width <= kCompareExhaustiveWidth are checked exhaustively; wider rows are
/// reported as Skipped. A spec that fails to build yields a row carrying the
/// error rather than aborting the table. Throws EmptySpecList on no specs.
ComparisonTable compare(std::span<const AdderSpec> specs, const DelayModel& model, bool verify);

/// Human-readable table. Power is printed as n/a, and the footer notes that
/// raw gate counts are not comparable to FPGA LUT/slice counts.
std::string format_comparison(const ComparisonTable& table);

}  // namespace adderlab
