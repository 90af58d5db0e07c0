#include "adderlab/adders.hpp"
#include "adderlab/analysis.hpp"
#include "adderlab/io.hpp"
#include "golden.hpp"

#include <doctest.h>
#include <json.hpp>

#include <map>
#include <random>
#include <sstream>

using namespace adderlab;
using nlohmann::json;

namespace {

Errc import_code(const std::string& text) {
  try {
    (void)import_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("import unexpectedly succeeded");
  return Errc::InvariantViolation;
}

Errc import_code(const json& doc) { return import_code(std::string(doc.dump())); }

std::vector<Netlist> width8_designs() {
  std::vector<Netlist> out;
  out.push_back(build_rca(8));
  out.push_back(build_cla_block(8));
  out.push_back(build_cla_block(8, 3));
  out.push_back(build_cia(8, 4, BlockKind::Rca));
  out.push_back(build_cia(8, 4, BlockKind::Cla));
  out.push_back(build_cia(8, 3, BlockKind::Cla, 2));
  out.push_back(build_incrementer(8));
  return out;
}

std::vector<bool> truth_table(const Netlist& n) {
  const std::size_t k = n.inputs().size();
  std::vector<std::uint64_t> words(k);
  std::vector<bool> out;
  for (std::uint64_t base = 0; base < (std::uint64_t{1} << k); base += 64) {
    for (std::size_t i = 0; i < k; ++i) {
      words[i] = 0;
      for (unsigned lane = 0; lane < 64; ++lane) {
        if (((base + lane) >> i) & 1U) words[i] |= std::uint64_t{1} << lane;
      }
    }
    const auto nets = n.simulate(words);
    for (const Port& p : n.outputs()) {
      for (unsigned lane = 0; lane < 64 && base + lane < (std::uint64_t{1} << k); ++lane) {
        out.push_back(((nets[p.net.index] >> lane) & 1U) != 0);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("json round trip preserves structure and behaviour") {
  for (const Netlist& n : width8_designs()) {
    CAPTURE(n.name());
    const std::string text = export_json(n);
    const Netlist back = import_json(text);
    CHECK(export_json(back) == text);
    CHECK(back.name() == n.name());
    CHECK(back.gates().size() == n.gates().size());
    CHECK(back.nets().size() == n.nets().size());
    REQUIRE(back.inputs().size() == n.inputs().size());
    REQUIRE(back.outputs().size() == n.outputs().size());
    for (std::size_t i = 0; i < n.inputs().size(); ++i) {
      CHECK(back.inputs()[i].name == n.inputs()[i].name);
    }
    for (std::size_t i = 0; i < n.outputs().size(); ++i) {
      CHECK(back.outputs()[i].name == n.outputs()[i].name);
    }
    CHECK(back.carry_merges().has_value() == n.carry_merges().has_value());
    if (n.inputs().size() <= 17) CHECK(truth_table(back) == truth_table(n));
  }
}

TEST_CASE("round-tripped carry-increment adders keep their stage metadata") {
  const Netlist cia = build_cia(8, 4, BlockKind::Cla);
  const Netlist back = import_json(export_json(cia));
  REQUIRE(back.carry_merges().has_value());
  CHECK(back.carry_merges()->size() == 1);
  CHECK(probe_invariant_carry_exclusive(back, 8));
  CHECK(check_exhaustive(back, 8).passed());
  CHECK(critical_path(back, DelayModel::unit()).delay == 8.0);
}

TEST_CASE("export is deterministic across independent builds") {
  CHECK(export_json(build_cia(16, 4, BlockKind::Cla)) == export_json(build_cia(16, 4, BlockKind::Cla)));
  CHECK(export_dot(build_cia(8, 4, BlockKind::Rca)) == export_dot(build_cia(8, 4, BlockKind::Rca)));
  CHECK(export_verilog(build_cla_block(8, 2)) == export_verilog(build_cla_block(8, 2)));
}

TEST_CASE("import rejects malformed documents") {
  const json good = json::parse(export_json(build_half_adder()));

  CHECK(import_code(std::string("")) == Errc::ParseError);
  CHECK(import_code(std::string("{")) == Errc::ParseError);
  CHECK(import_code(std::string("[]")) == Errc::ParseError);
  CHECK(import_code(json{{"format_version", 1}}) == Errc::ParseError);

  json doc = good;
  doc["format_version"] = 2;
  CHECK(import_code(doc) == Errc::UnsupportedVersion);

  doc = good;
  doc["gates"][0]["kind"] = "NAND";
  CHECK(import_code(doc) == Errc::UnknownGateKind);

  doc = good;
  doc["gates"][1]["output"] = 2;  // both gates drive net 2
  CHECK(import_code(doc) == Errc::InvariantViolation);

  doc = good;
  doc["gates"][0]["inputs"] = {0, 7};  // undriven net
  CHECK(import_code(doc) == Errc::InvariantViolation);

  doc = good;
  doc["gates"][0]["inputs"] = {0};  // XOR with one input
  CHECK(import_code(doc) == Errc::InvariantViolation);

  doc = good;
  doc["gates"][0]["inputs"] = {0, 3};
  doc["gates"][1]["inputs"] = {1, 2};
  CHECK(import_code(doc) == Errc::InvariantViolation);

  doc = good;
  doc["outputs"][1]["name"] = "s";
  CHECK(import_code(doc) == Errc::InvariantViolation);

  doc = good;
  doc["gates"][0]["output"] = -1;
  CHECK(import_code(doc) == Errc::ParseError);
}

TEST_CASE("import rejects a mismatched carry merge") {
  json doc = json::parse(export_json(build_cia(8, 4, BlockKind::Rca)));
  REQUIRE(doc["carry_merges"].size() == 1);
  std::swap(doc["carry_merges"][0]["block_carry"], doc["carry_merges"][0]["gate"]);
  CHECK(import_code(doc) == Errc::InvariantViolation);
}

TEST_CASE("fuzz: corrupted documents fail cleanly or round-trip") {
  const std::string base = export_json(build_cia(4, 2, BlockKind::Cla));
  std::mt19937 rng(2024);
  const std::string alphabet = "{}[]\",:0123456789-aXOR ";
  int rejected = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::string text = base;
    for (int edit = 0; edit < 1 + static_cast<int>(rng() % 3); ++edit) {
      text[rng() % text.size()] = alphabet[rng() % alphabet.size()];
    }
    try {
      const Netlist n = import_json(text);
      CHECK(import_json(export_json(n)).gates().size() == n.gates().size());
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("dot rendering of a half adder") {
  const std::string dot = export_dot(build_half_adder());
  auto count = [&](std::string_view needle) {
    std::size_t n = 0;
    for (std::size_t at = dot.find(needle); at != std::string::npos; at = dot.find(needle, at + 1)) ++n;
    return n;
  };
  CHECK(count("shape=invtriangle") == 2);
  CHECK(count("shape=triangle") == 2);
  CHECK(count("shape=box") == 2);
  CHECK(count(" -> ") == 6);
  CHECK(testing::matches_golden("half_adder.dot", dot));
}

TEST_CASE("dot clusters follow gate groups") {
  const std::string dot = export_dot(build_cia(8, 4, BlockKind::Rca));
  for (const char* cluster : {"cluster_block0", "cluster_block1", "cluster_inc1", "cluster_merge1"}) {
    CHECK(dot.find(cluster) != std::string::npos);
  }
  CHECK(export_dot(build_rca(4)).find("cluster_") == std::string::npos);
}

TEST_CASE("verilog of a half adder") {
  const std::string v = export_verilog(build_half_adder());
  CHECK(v.find("xor g0 (s, a, b);") != std::string::npos);
  CHECK(v.find("and g1 (c, a, b);") != std::string::npos);
  CHECK(testing::matches_golden("half_adder.v", v));
  CHECK(testing::matches_golden("half_adder.json", export_json(build_half_adder())));
}

TEST_CASE("verilog of an 8-bit carry-increment adder") {
  const std::string v = export_verilog(build_cia(8, 4, BlockKind::Cla));
  CHECK(v.rfind("module cia_cla_w8_b4 (", 0) == 0);
  for (unsigned i = 0; i < 8; ++i) {
    CHECK(v.find("  input a_" + std::to_string(i) + ";") != std::string::npos);
    CHECK(v.find("  output s_" + std::to_string(i) + ";") != std::string::npos);
  }
  CHECK(v.find("  input cin;") != std::string::npos);
  CHECK(v.find("  output cout;") != std::string::npos);
  CHECK(v.find("1'b0") != std::string::npos);
  CHECK(v.find("endmodule") != std::string::npos);
  CHECK(testing::matches_golden("cia_cla_w8_b4.v", v));
}

TEST_CASE("verilog identifiers") {
  CHECK(sanitize_identifier("a_0") == "a_0");
  CHECK(sanitize_identifier("x[3]") == "x_3_");
  CHECK(sanitize_identifier("3bit") == "_3bit");
  CHECK(sanitize_identifier("") == "_");

  NetlistBuilder nb("clash");
  NetId a = nb.declare_input("x[0]");
  NetId b = nb.declare_input("x_0_");
  nb.declare_output("y", nb.add_gate(GateKind::And, {a, b}));
  try {
    (void)export_verilog(nb.freeze());
    FAIL("expected a collision");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NameCollisionAfterSanitization);
  }

  NetlistBuilder shadow("shadow");
  NetId p = shadow.declare_input("g0");
  NetId q = shadow.declare_input("q");
  shadow.declare_output("y", shadow.add_gate(GateKind::Or, {p, q}));
  try {
    (void)export_verilog(shadow.freeze());
    FAIL("expected a collision with an instance name");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NameCollisionAfterSanitization);
  }
}

TEST_CASE("verilog of an output that aliases another port") {
  NetlistBuilder nb("alias");
  NetId a = nb.declare_input("a");
  NetId b = nb.declare_input("b");
  NetId y = nb.add_gate(GateKind::Xor, {a, b});
  nb.declare_output("y", y);
  nb.declare_output("y_copy", y);
  nb.declare_output("pass", a);
  const std::string v = export_verilog(nb.freeze());
  CHECK(v.find("assign y_copy = y;") != std::string::npos);
  CHECK(v.find("assign pass = a;") != std::string::npos);
}

TEST_CASE("csv comparison table") {
  const std::vector<AdderSpec> specs = {{Architecture::CiaRca, 8, 4, std::nullopt},
                                        {Architecture::CiaCla, 8, 4, std::nullopt},
                                        {Architecture::Rca, 4, 4, std::nullopt},
                                        {Architecture::CiaRca, 2, 4, std::nullopt}};
  const std::string csv = export_csv(compare(specs, DelayModel::unit(), true));
  CHECK(csv.rfind("arch,width,block,gates,delay_gd,verified\n", 0) == 0);
  CHECK(csv.find("cia_rca,8,4,49,14.00,true\n") != std::string::npos);
  CHECK(csv.find("cia_cla,8,4,61,8.00,true\n") != std::string::npos);
  CHECK(csv.find("rca,4,-,20,9.00,true\n") != std::string::npos);
  CHECK(csv.find("cia_rca,2,4,,,false\n") != std::string::npos);
  CHECK(testing::matches_golden("compare_w8.csv", csv));
}

TEST_CASE("equivalence reports serialize") {
  const json r = json::parse(report_to_json(check_random(build_rca(8), 8, 16, 5)));
  CHECK(r["mode"] == "random");
  CHECK(r["cases_checked"] == 20);
  CHECK(r["failure_count"] == 0);
  CHECK(r["seed"] == 5);
  CHECK(r["generator"] == "mt19937_64");
}

TEST_CASE("emitted verilog computes the sum when interpreted line by line") {
  // Independent reading of the text: primitives and assigns only, evaluated
  // to a fixed point so statement order does not matter.
  struct Stmt {
    std::string kind;
    std::string out;
    std::vector<std::string> ins;
  };
  for (const Netlist& n : {build_cia(8, 4, BlockKind::Cla), build_cia(8, 3, BlockKind::Rca),
                           build_cla_block(8, 2)}) {
    CAPTURE(n.name());
    std::vector<Stmt> stmts;
    std::istringstream lines(export_verilog(n));
    for (std::string line; std::getline(lines, line);) {
      std::istringstream words(line);
      std::string kind;
      words >> kind;
      if (kind == "assign") {
        std::string lhs, eq, rhs;
        words >> lhs >> eq >> rhs;
        rhs.pop_back();
        stmts.push_back({"buf", lhs, {rhs}});
      } else if (kind == "and" || kind == "or" || kind == "xor" || kind == "not") {
        const auto open = line.find('(');
        std::string args = line.substr(open + 1, line.rfind(')') - open - 1);
        std::vector<std::string> names;
        std::istringstream parts(args);
        for (std::string name; std::getline(parts, name, ',');) {
          name.erase(0, name.find_first_not_of(' '));
          names.push_back(name);
        }
        stmts.push_back({kind, names[0], {names.begin() + 1, names.end()}});
      }
    }
    CHECK(stmts.size() >= n.gates().size());

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t a = rng() & 0xFF;
      const std::uint64_t b = rng() & 0xFF;
      const bool cin = (rng() & 1U) != 0;
      std::map<std::string, int> value{{"1'b0", 0}, {"1'b1", 1}, {"cin", cin}};
      for (int i = 0; i < 8; ++i) {
        value["a_" + std::to_string(i)] = (a >> i) & 1U;
        value["b_" + std::to_string(i)] = (b >> i) & 1U;
      }
      for (bool changed = true; changed;) {
        changed = false;
        for (const Stmt& s : stmts) {
          if (value.count(s.out)) continue;
          bool ready = true;
          for (const auto& in : s.ins) ready = ready && value.count(in);
          if (!ready) continue;
          int v = value[s.ins[0]];
          for (std::size_t k = 1; k < s.ins.size(); ++k) {
            const int x = value[s.ins[k]];
            v = s.kind == "and" ? (v & x) : s.kind == "or" ? (v | x) : (v ^ x);
          }
          if (s.kind == "not") v ^= 1;
          value[s.out] = v;
          changed = true;
        }
      }
      std::uint64_t sum = 0;
      for (int i = 0; i < 8; ++i) {
        REQUIRE(value.count("s_" + std::to_string(i)));
        sum |= static_cast<std::uint64_t>(value["s_" + std::to_string(i)]) << i;
      }
      CHECK(OracleSum{sum, value.at("cout") != 0} == oracle_add(a, b, cin, 8));
    }
  }
}
