#include "adderlab/cli.hpp"

#include "adderlab/adders.hpp"
#include "adderlab/analysis.hpp"
#include "adderlab/io.hpp"
#include "adderlab/timing.hpp"
#include "adderlab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace adderlab {

namespace {

struct SpecFlags {
  std::string arch;
  unsigned width = 8;
  unsigned block = 4;
  std::optional<unsigned> max_fanin;
};

CLI::Option* add_spec_flags(CLI::App& cmd, SpecFlags& flags, bool with_arch) {
  CLI::Option* arch = nullptr;
  if (with_arch) {
    arch = cmd.add_option("--arch", flags.arch, "Adder architecture")
               ->required()
               ->check(CLI::IsMember({"rca", "cla", "cia_rca", "cia_cla"}));
  }
  cmd.add_option("--width", flags.width, "Operand width in bits")->capture_default_str();
  cmd.add_option("--block", flags.block, "Block size of carry-increment adders")
      ->capture_default_str();
  cmd.add_option("--max-fanin", flags.max_fanin,
                 "Fan-in limit for lookahead gates (unlimited when absent)");
  return arch;
}

AdderSpec to_spec(const std::string& arch, const SpecFlags& flags) {
  return AdderSpec{*parse_architecture(arch), flags.width, flags.block, flags.max_fanin};
}

DelayModel parse_model(const std::string& name) {
  return name == "log2" ? DelayModel::log2() : DelayModel::unit();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

std::string fixed2(double value) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << value;
  return s.str();
}

void print_report(const Netlist& netlist, const EquivalenceReport& report, std::ostream& out) {
  out << netlist.name() << ": ";
  if (report.mode == CheckMode::Exhaustive) {
    out << "exhaustive, ";
  } else {
    out << "random (" << report.generator << ", seed " << report.seed << ", " << report.samples
        << " samples + 4 boundary), ";
  }
  out << report.cases_checked << " cases, " << report.failure_count << " failures\n";
  for (const Mismatch& m : report.failures) {
    out << "  mismatch a=" << m.a << " b=" << m.b << " cin=" << m.cin
        << ": expected s=" << m.expected.sum << " cout=" << m.expected.cout
        << ", got s=" << m.got.sum << " cout=" << m.got.cout << '\n';
  }
  if (report.failure_count > report.failures.size()) {
    out << "  (" << report.failure_count - report.failures.size() << " more not listed)\n";
  }
}

// One worked example with cin = 0: all-ones plus one.
void print_demo(const Netlist& netlist, unsigned width, std::ostream& out) {
  if (width > 64) return;
  const std::uint64_t max = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  Assignment in;
  for (unsigned i = 0; i < width; ++i) {
    in["a_" + std::to_string(i)] = ((max >> i) & 1U) != 0;
    in["b_" + std::to_string(i)] = i == 0;
  }
  in["cin"] = false;
  const EvalResult r = netlist.evaluate(in);
  std::uint64_t sum = 0;
  for (unsigned i = 0; i < width; ++i) {
    if (r.outputs.at("s_" + std::to_string(i))) sum |= std::uint64_t{1} << i;
  }
  out << "demo: a=" << max << " b=1 cin=0 -> s=" << sum << " cout=" << r.outputs.at("cout")
      << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gate-level adder generator, verifier and timing analyzer", "adderlab"};
  app.require_subcommand(1);

  SpecFlags build_flags;
  std::string build_out;
  auto* build = app.add_subcommand("build", "Build an adder netlist and emit it as JSON");
  add_spec_flags(*build, build_flags, true);
  build->add_option("--out", build_out, "Write the netlist JSON here instead of stdout");

  SpecFlags verify_flags;
  bool exhaustive = false;
  std::optional<std::uint64_t> random_samples;
  std::uint64_t seed = 0;
  std::string report_path;
  std::string netlist_path;
  auto* verify = app.add_subcommand("verify", "Check an adder against integer addition");
  auto* verify_arch = add_spec_flags(*verify, verify_flags, true);
  verify_arch->required(false);
  verify->add_option("--netlist", netlist_path,
                     "Check a netlist JSON file instead of building --arch (width from --width)")
      ->excludes(verify_arch);
  verify->callback([&] {
    if (verify_arch->count() == 0 && netlist_path.empty()) {
      throw CLI::RequiredError("--arch or --netlist");
    }
  });
  auto* exhaustive_flag = verify->add_flag("--exhaustive", exhaustive, "Enumerate every input");
  auto* random_opt =
      verify->add_option("--random", random_samples, "Check this many seeded random samples");
  exhaustive_flag->excludes(random_opt);
  verify->add_option("--seed", seed, "Seed for --random")->capture_default_str();
  verify->add_option("--report", report_path, "Write the equivalence report as JSON");

  SpecFlags analyze_flags;
  std::string analyze_model = "unit";
  std::string dot_path;
  std::string verilog_path;
  auto* analyze = app.add_subcommand("analyze", "Report area and critical path of one adder");
  add_spec_flags(*analyze, analyze_flags, true);
  analyze->add_option("--model", analyze_model, "Gate delay model")
      ->check(CLI::IsMember({"unit", "log2"}))
      ->capture_default_str();
  analyze->add_option("--dot", dot_path, "Write a Graphviz rendering");
  analyze->add_option("--verilog", verilog_path, "Write structural Verilog");

  SpecFlags compare_flags;
  std::vector<std::string> archs = {"cia_rca", "cia_cla"};
  std::string compare_model = "unit";
  std::string csv_path;
  auto* compare_cmd = app.add_subcommand("compare", "Compare architectures side by side");
  add_spec_flags(*compare_cmd, compare_flags, false);
  compare_cmd->add_option("--archs", archs, "Comma-separated architectures")
      ->delimiter(',')
      ->check(CLI::IsMember({"rca", "cla", "cia_rca", "cia_cla"}))
      ->capture_default_str();
  compare_cmd->add_option("--model", compare_model, "Gate delay model")
      ->check(CLI::IsMember({"unit", "log2"}))
      ->capture_default_str();
  compare_cmd->add_option("--csv", csv_path, "Write the comparison as CSV ('-' for stdout)");

  std::vector<std::string> argv_store{"adderlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) {
      const Netlist netlist = build_adder(to_spec(build_flags.arch, build_flags));
      const std::string json = export_json(netlist);
      if (build_out.empty()) {
        out << json;
      } else {
        write_file(build_out, json);
        out << "wrote " << netlist.name() << " (" << netlist.gates().size() << " gates) to "
            << build_out << '\n';
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const unsigned width = verify_flags.width;
      const Netlist netlist = netlist_path.empty()
                                  ? build_adder(to_spec(verify_flags.arch, verify_flags))
                                  : import_json(read_file(netlist_path));
      const bool use_random =
          random_samples.has_value() ||
          (!exhaustive && (2 * std::uint64_t{width} + 1 > 62 ||
                           (std::uint64_t{1} << (2 * width + 1)) > kDefaultCaseCap));
      ExhaustiveOptions options;
      options.workers = 0;
      const EquivalenceReport report =
          use_random ? check_random(netlist, width, random_samples.value_or(10000), seed)
                     : check_exhaustive(netlist, width, options);
      print_demo(netlist, width, out);
      print_report(netlist, report, out);
      if (!report_path.empty()) write_file(report_path, report_to_json(report));
      return report.passed() ? kExitOk : kExitVerifyFailed;
    }

    if (analyze->parsed()) {
      const Netlist netlist = build_adder(to_spec(analyze_flags.arch, analyze_flags));
      const AreaReport area = area_report(netlist);
      const DelayReport delay = delay_report(netlist, parse_model(analyze_model));
      out << netlist.name() << '\n' << "gates: " << area.total_gates << " (";
      bool first = true;
      for (const auto& [kind, count] : area.counts) {
        out << (first ? "" : ", ") << to_string(kind) << " " << count;
        first = false;
      }
      out << ")\n";
      for (const auto& [group, count] : area.by_block) {
        out << "  " << group << ": " << count << '\n';
      }
      out << "critical path (" << delay.model_name << "): " << fixed2(delay.delay)
          << " gate-delays over " << delay.path.size() << " gates\n";
      for (const PathStep& step : delay.path) {
        out << "  " << to_string(step.kind) << "#" << step.gate << " @ " << fixed2(step.arrival)
            << '\n';
      }
      if (!dot_path.empty()) write_file(dot_path, export_dot(netlist));
      if (!verilog_path.empty()) write_file(verilog_path, export_verilog(netlist));
      return kExitOk;
    }

    if (compare_cmd->parsed()) {
      std::vector<AdderSpec> specs;
      for (const std::string& arch : archs) specs.push_back(to_spec(arch, compare_flags));
      const ComparisonTable table = compare(specs, parse_model(compare_model), true);
      out << format_comparison(table);
      if (csv_path == "-") {
        out << '\n' << export_csv(table);
      } else if (!csv_path.empty()) {
        write_file(csv_path, export_csv(table));
      }
      for (const ComparisonRow& row : table.rows) {
        if (!row.error.empty()) {
          err << "error: " << row.error << '\n';
          return kExitUsage;
        }
      }
      for (const ComparisonRow& row : table.rows) {
        if (row.verified == Verification::Failed) return kExitVerifyFailed;
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace adderlab
