#include "adderlab/analysis.hpp"

#include <cstdio>
#include <sstream>

namespace adderlab {

std::string_view to_string(Verification v) noexcept {
  switch (v) {
    case Verification::Passed: return "true";
    case Verification::Failed: return "false";
    case Verification::Skipped: return "skipped";
  }
  return "?";
}

AreaReport area_report(const Netlist& netlist) {
  AreaReport report;
  for (const Gate& gate : netlist.gates()) {
    ++report.counts[gate.kind];
    if (!gate.group.empty()) ++report.by_block[gate.group];
  }
  report.total_gates = netlist.gates().size();
  return report;
}

DelayReport delay_report(const Netlist& netlist, const DelayModel& model) {
  const CriticalPath cp = critical_path(netlist, model);
  DelayReport report;
  report.model_name = model.name;
  report.delay = cp.delay;
  const auto gates = netlist.gates();
  for (std::size_t g : cp.path) {
    report.path.push_back({g, gates[g].kind, cp.arrival[gates[g].output.index]});
  }
  return report;
}

ComparisonTable compare(std::span<const AdderSpec> specs, const DelayModel& model, bool verify) {
  if (specs.empty()) throw Error(Errc::EmptySpecList, "nothing to compare");
  model.validate();

  ComparisonTable table;
  table.model_name = model.name;
  for (const AdderSpec& spec : specs) {
    ComparisonRow row;
    row.spec = spec;
    try {
      const Netlist netlist = build_adder(spec);
      row.area = area_report(netlist);
      row.delay = delay_report(netlist, model);
      if (verify && spec.width <= kCompareExhaustiveWidth) {
        ExhaustiveOptions options;
        options.case_cap = std::uint64_t{1} << (2 * kCompareExhaustiveWidth + 1);
        options.workers = 0;
        row.verified = check_exhaustive(netlist, spec.width, options).passed()
                           ? Verification::Passed
                           : Verification::Failed;
      }
    } catch (const Error& e) {
      row.area = {};
      row.delay = {};
      row.error = e.what();
      row.verified = Verification::Failed;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

std::string fixed2(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string pad(std::string text, std::size_t width, bool right) {
  if (text.size() >= width) return text;
  const std::string fill(width - text.size(), ' ');
  return right ? fill + text : text + fill;
}

}  // namespace

std::string format_comparison(const ComparisonTable& table) {
  std::ostringstream out;
  out << pad("arch", 9, false) << pad("width", 6, true) << pad("block", 7, true)
      << pad("gates", 7, true) << pad("delay_gd", 10, true) << "  " << pad("verified", 9, false)
      << "power\n";
  for (const ComparisonRow& row : table.rows) {
    const std::string block =
        is_carry_increment(row.spec.arch) ? std::to_string(row.spec.block_size) : "-";
    out << pad(std::string(to_string(row.spec.arch)), 9, false)
        << pad(std::to_string(row.spec.width), 6, true) << pad(block, 7, true);
    if (row.error.empty()) {
      out << pad(std::to_string(row.area.total_gates), 7, true)
          << pad(fixed2(row.delay.delay), 10, true);
    } else {
      out << pad("-", 7, true) << pad("-", 10, true);
    }
    out << "  " << pad(std::string(to_string(row.verified)), 9, false) << "n/a";
    if (!row.error.empty()) out << "  (" << row.error << ")";
    out << '\n';
  }
  out << "\ndelay model: " << table.model_name << " (dimensionless gate-delays)\n"
      << "power: n/a (not modeled)\n"
      << "gates: raw AND/OR/XOR/NOT census; not comparable to FPGA LUT or slice counts.\n"
      << "       A design with more raw gates can still pack into fewer LUTs.\n";
  return out.str();
}

}  // namespace adderlab
