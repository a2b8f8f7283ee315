#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and returns its exit code and stdout.
Run cli(const std::string& args) {
  const std::string cmd = "cd '" ROECALC_TEST_WORKDIR "' && '" ROECALC_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path work(const std::string& name) { return fs::path(ROECALC_TEST_WORKDIR) / name; }

void write_text(const std::string& name, const std::string& text) { std::ofstream(work(name)) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("demo idem reproduces the half-line example") {
  const Run r = cli("demo idem --max-n 50");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["selfadjoint"]["bound"] == 0.0);
  CHECK(j["idempotent"]["bound"] == 0.5);
  CHECK(j["df_below_dzero"]["relation"] == "holds-bounded");
  CHECK(j["dzero_below_df"]["relation"] == "fails-growing");
  CHECK(j["reproduced"] == true);
}

TEST_CASE("join-feasible reports the obstruction") {
  const Run r = cli("join-feasible --g1 df:id:10 --g2 df:neg:10 --bound 3");
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(j["certificate"]["kind"] == "triangle");
  CHECK(j["certificate"]["lhs"] == 8.0);
  CHECK(j["certificate"]["rhs"] == 6.0);
  CHECK(j["certificate"]["witness"].size() == 3);

  const Run control = cli("join-feasible --g1 dzero:10 --g2 dzero:10 --bound 1");
  CHECK(control.code == 0);
}

TEST_CASE("validate distinguishes invalid input") {
  write_text("bad.json", R"({"points": ["a", "b", "c"], "dist": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]})");
  CHECK(cli("validate --space bad.json").code == 2);
  write_text("good.json", R"({"points": ["a", "b"], "dist": [[0, 1], [1, 0]]})");
  CHECK(cli("validate --space good.json").code == 0);
  CHECK(cli("validate --space z_interval:4").code == 0);
  CHECK(cli("validate --space torus:4").code == 2);
  CHECK(cli("validate --bogus-flag 1").code == 2);
  write_text("syntax.json", "{\"points\": [");
  CHECK(cli("validate --space syntax.json").code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::string args : {"compose --g1 random_glue:8:{seed} --g2 dzero:random_bg:8:3:5 --seed 4",
                                 "profile --g1 idem --g2 dzero --max-n 12 --radii 1,2,4",
                                 "equiv-check --g1 idem --g2 dzero --max-n 15",
                                 "demo nonupper"}) {
    CAPTURE(args);
    const Run a = cli(args);
    const Run b = cli(args);
    CHECK(a.code == b.code);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("output files carry a separate metadata record") {
  fs::remove(work("inv.json"));
  fs::remove(work("inv.json.meta.json"));
  const Run r = cli("inv-semi --glue random_glue:6:3 --output inv.json");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  REQUIRE(fs::exists(work("inv.json")));
  REQUIRE(fs::exists(work("inv.json.meta.json")));
  const json meta = json::parse(slurp(work("inv.json.meta.json")));
  CHECK(meta["command"] == "inv-semi");
  CHECK(meta["exit_code"] == 0);
  CHECK(meta["rng"] == "mt19937_64/v1");
  CHECK(meta.contains("timestamp"));
  const std::string first = slurp(work("inv.json"));
  cli("inv-semi --glue random_glue:6:3 --output inv.json");
  CHECK(slurp(work("inv.json")) == first);
  CHECK(json::parse(first)["holds"] == true);
}

TEST_CASE("scenario files") {
  write_text("scenario.json", R"({
    "name": "idem below d0",
    "operation": "order-check",
    "inputs": {"g1": "idem", "g2": "dzero"},
    "parameters": {"max_n": 12, "radii": [1, 2, 4]},
    "output": "scenario_report.json"
  })");
  CHECK(cli("run --input scenario.json").code == 0);
  const json report = json::parse(slurp(work("scenario_report.json")));
  CHECK(report["relation"] == "holds-bounded");
  CHECK(report["probes"] == json({1.0, 2.0, 4.0}));

  write_text("reverse.json", R"({"operation": "order-check", "inputs": {"g1": "dzero", "g2": "idem"},
                                 "parameters": {"max_n": 12}})");
  CHECK(cli("run --input reverse.json").code == 1);

  write_text("unknown.json", R"({"operation": "compose", "inputs": {"g1": "dzero:2", "g2": "dzero:2"}, "colour": 1})");
  CHECK(cli("run --input unknown.json").code == 2);
  write_text("unknown_param.json", R"({"operation": "compose", "inputs": {"g1": "dzero:2", "g2": "dzero:2"},
                                       "parameters": {"tolerance": 1}})");
  CHECK(cli("run --input unknown_param.json").code == 2);
  write_text("wrong_input.json", R"({"operation": "compose", "inputs": {"glue": "dzero:2"}})");
  CHECK(cli("run --input wrong_input.json").code == 2);
}

TEST_CASE("csv profiles and band listings") {
  const Run csv = cli("profile --g1 dzero --g2 dzero --max-n 3 --radii 1,2 --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,R,h\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);

  write_text("op.json", R"({"source": "z_interval:2", "target": "z_interval:2",
                            "entries": [["0", "0", 1], ["1", "0", 2], ["0", "1", 3], ["2", "2", 1, 1]]})");
  const Run bands = cli("band-decompose --op op.json --glue dzero:2");
  CHECK(bands.code == 0);
  std::istringstream lines(bands.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("band " + std::to_string(count) + " support ", 0) == 0);
    CHECK(line.find(" propagation ") != std::string::npos);
    ++count;
  }
  CHECK(count == 2);
}
