#include "adderlab/cli.hpp"
#include "adderlab/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace adderlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "adderlab_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("help exits zero for the app and every subcommand") {
  CHECK(run({"--help"}).code == kExitOk);
  for (const char* sub : {"build", "verify", "analyze", "compare"}) {
    CAPTURE(sub);
    const Run r = run({sub, "--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("--width") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"build"}).code == kExitUsage);
  CHECK(run({"build", "--arch", "kogge_stone"}).code == kExitUsage);
  CHECK(run({"build", "--arch", "rca", "--bogus"}).code == kExitUsage);
  CHECK(run({"verify"}).code == kExitUsage);
  CHECK(run({"verify", "--arch", "rca", "--exhaustive", "--random", "5"}).code == kExitUsage);
  CHECK(run({"analyze", "--arch", "rca", "--model", "quadratic"}).code == kExitUsage);
  CHECK(run({"compare", "--archs", "rca,nope"}).code == kExitUsage);
}

TEST_CASE("library errors exit 2 with a message") {
  const Run r = run({"build", "--arch", "cia_rca", "--width", "2", "--block", "4"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("BlockTooLarge") != std::string::npos);
  CHECK(run({"build", "--arch", "rca", "--width", "0"}).code == kExitUsage);
  CHECK(run({"verify", "--arch", "rca", "--width", "16", "--exhaustive"}).code == kExitUsage);
  CHECK(run({"compare", "--width", "2", "--block", "4"}).code == kExitUsage);
}

TEST_CASE("build writes importable json") {
  const Run r = run({"build", "--arch", "cia_cla", "--width", "8"});
  REQUIRE(r.code == kExitOk);
  const Netlist n = import_json(r.out);
  CHECK(n.name() == "cia_cla_w8_b4");
  CHECK(n.gates().size() == 61);

  const fs::path file = scratch_dir() / "cla.json";
  CHECK(run({"build", "--arch", "cla", "--width", "6", "--max-fanin", "3", "--out", file.string()})
            .code == kExitOk);
  CHECK(import_json(slurp(file)).name() == "cla_w6_f3");
}

TEST_CASE("verify") {
  Run r = run({"verify", "--arch", "cia_cla", "--width", "8"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("demo: a=255 b=1 cin=0 -> s=0 cout=1") != std::string::npos);
  CHECK(r.out.find("cia_cla_w8_b4: exhaustive, 131072 cases, 0 failures") != std::string::npos);

  r = run({"verify", "--arch", "rca", "--width", "32"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("random (mt19937_64, seed 0, 10000 samples + 4 boundary), 10004 cases") !=
        std::string::npos);

  const fs::path report = scratch_dir() / "report.json";
  r = run({"verify", "--arch", "cia_rca", "--width", "64", "--random", "200", "--seed", "11",
           "--report", report.string()});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(report));
  CHECK(doc["cases_checked"] == 204);
  CHECK(doc["seed"] == 11);
}

TEST_CASE("verify of a broken netlist exits 1") {
  auto doc = nlohmann::json::parse(run({"build", "--arch", "rca", "--width", "4"}).out);
  for (auto& gate : doc["gates"]) {
    if (gate["kind"] == "OR") {
      gate["kind"] = "AND";
      break;
    }
  }
  const fs::path file = scratch_dir() / "broken.json";
  std::ofstream(file) << doc.dump();
  const Run r = run({"verify", "--netlist", file.string(), "--width", "4"});
  CHECK(r.code == kExitVerifyFailed);
  CHECK(r.out.find("mismatch") != std::string::npos);
  CHECK(run({"verify", "--netlist", file.string(), "--arch", "rca"}).code == kExitUsage);
  CHECK(run({"verify", "--netlist", (scratch_dir() / "missing.json").string()}).code == kExitUsage);
}

TEST_CASE("analyze") {
  Run r = run({"analyze", "--arch", "cla", "--width", "4", "--model", "log2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("critical path (log2): 7.00 gate-delays") != std::string::npos);

  const fs::path dot = scratch_dir() / "cia.dot";
  const fs::path v = scratch_dir() / "cia.v";
  r = run({"analyze", "--arch", "cia_rca", "--dot", dot.string(), "--verilog", v.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("gates: 49") != std::string::npos);
  CHECK(r.out.find("critical path (unit): 14.00") != std::string::npos);
  CHECK(slurp(dot).rfind("digraph \"cia_rca_w8_b4\"", 0) == 0);
  CHECK(slurp(v).rfind("module cia_rca_w8_b4 (", 0) == 0);
}

TEST_CASE("compare") {
  Run r = run({"compare"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("n/a") != std::string::npos);

  r = run({"compare", "--archs", "rca,cla", "--width", "4", "--csv", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("arch,width,block,gates,delay_gd,verified\nrca,4,-,20,9.00,true\ncla,4,-,26,4.00,true\n") !=
        std::string::npos);

  const fs::path csv = scratch_dir() / "cmp.csv";
  CHECK(run({"compare", "--csv", csv.string()}).code == kExitOk);
  CHECK(slurp(csv).find("cia_cla,8,4,61,8.00,true") != std::string::npos);
}
