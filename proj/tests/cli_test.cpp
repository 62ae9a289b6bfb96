#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nsw/json_io.hpp"

namespace fs = std::filesystem;
using nsw::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() / ("nsw_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  fs::path path(const std::string& name) const { return dir_ / name; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

 private:
  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const Scratch& tmp, const std::string& args) {
  const fs::path out = tmp.path("stdout.txt");
  const fs::path err = tmp.path("stderr.txt");
  const std::string cmd = std::string("\"") + NSW_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("cli gen, solve and certify the multicopy example") {
  Scratch tmp;
  const std::string inst = tmp.path("mc.json").string();
  const std::string sol = tmp.path("mc_sol.json").string();
  REQUIRE(run(tmp, "gen --output " + inst + " multicopy-envy --epsilon 1/100").code == 0);
  REQUIRE(run(tmp, "solve --input " + inst + " --epsilon 1/100 --output " + sol).code == 0);
  const Json out = nsw::parse_json_text(slurp(sol));
  CHECK(out["allocation"] == Json::parse("[[2,0],[3,2]]"));
  CHECK(out["iterations"] == 1);
  CHECK(out["terminal"] == "beta3_break");
  CHECK(out["mbb"][0]["num"] == "10201");
  CHECK(out["mbb"][0]["den"] == "20000");

  const Run cert = run(tmp, "certify --input " + inst + " --solution " + sol);
  CHECK(cert.code == 0);
  const Json c = nsw::parse_json_text(cert.out);
  CHECK(c["ef1_ok"] == true);
  CHECK(c["passed"] == true);
  CHECK(c["individual_witness"] == Json::parse("[1,2]"));
  CHECK(c["worst_individual_ratio"]["approx"].get<double>() == doctest::Approx(1.24425).epsilon(1e-5));
}

TEST_CASE("cli certify on the three-good example") {
  Scratch tmp;
  tmp.write("ex.json", R"({"agents":[{"cap":null},{"cap":null}],"goods":[{"copies":1},{"copies":1},{"copies":1}],
                           "utilities":[[[3],[1],[1]],[[3],[1],[1]]]})");
  const std::string inst = tmp.path("ex.json").string();
  const std::string sol = tmp.path("ex_sol.json").string();
  REQUIRE(run(tmp, "solve --input " + inst + " --epsilon 1/4 --output " + sol).code == 0);
  const Json out = nsw::parse_json_text(slurp(sol));
  CHECK(out["allocation"] == Json::parse("[[1,0,1],[0,1,0]]"));
  const Run cert = run(tmp, "certify --input " + inst + " --solution " + sol);
  CHECK(cert.code == 0);
  const Json c = nsw::parse_json_text(cert.out);
  // The certificate works on the rounded instance, where 3 becomes 3125/1024.
  CHECK(c["upper_bound_nth_power"]["num"] == "3125");
  CHECK(c["upper_bound_nth_power"]["den"] == "512");
}

TEST_CASE("cli oracle on the lower-bound family") {
  Scratch tmp;
  const std::string inst = tmp.path("lb.json").string();
  REQUIRE(run(tmp, "gen --output " + inst + " lower-bound --k 3 --s 1 --K 666").code == 0);
  const Run r = run(tmp, "oracle --input " + inst);
  CHECK(r.code == 0);
  const Json o = nsw::parse_json_text(r.out);
  CHECK(o["best_nsw_nth_power"]["num"] == "1330668");
  CHECK(o["states"] == 243);
}

TEST_CASE("cli exit codes") {
  Scratch tmp;
  tmp.write("bad.json", R"({"agents":[{"cap":null}],"goods":[{"copies":2}],"utilities":[[[1,5]]]})");
  tmp.write("broken.json", "{not json");
  const std::string bad = tmp.path("bad.json").string();
  const Run r1 = run(tmp, "solve --input " + bad + " --epsilon 1/4");
  CHECK(r1.code == 2);
  CHECK(r1.err.find("utilities increasing at (agent 1, good 1)") != std::string::npos);
  CHECK(run(tmp, "solve --input " + tmp.path("broken.json").string() + " --epsilon 1/4").code == 2);
  CHECK(run(tmp, "solve --input " + tmp.path("missing.json").string() + " --epsilon 1/4").code == 2);

  const std::string mc = tmp.path("mc.json").string();
  REQUIRE(run(tmp, "gen --output " + mc + " multicopy-envy --epsilon 1/100").code == 0);
  const Run r2 = run(tmp, "solve --input " + mc + " --epsilon 1/3");
  CHECK(r2.code == 2);
  CHECK(r2.err.find("epsilon") != std::string::npos);
  CHECK(run(tmp, "solve --input " + mc).code == 2);
  CHECK(run(tmp, "--help").code == 0);

  const std::string big = tmp.path("big.json").string();
  REQUIRE(run(tmp, "gen --output " + big + " random --n 4 --m 20 --max-copies 1 --seed 1").code == 0);
  CHECK(run(tmp, "oracle --input " + big).code == 2);
}

TEST_CASE("cli certify flags a broken solution with exit 4") {
  Scratch tmp;
  const std::string inst = tmp.path("mc.json").string();
  const std::string sol = tmp.path("sol.json").string();
  REQUIRE(run(tmp, "gen --output " + inst + " multicopy-envy --epsilon 1/100").code == 0);
  REQUIRE(run(tmp, "solve --input " + inst + " --epsilon 1/100 --output " + sol).code == 0);
  Json doc = nsw::parse_json_text(slurp(sol));
  // Undo the final price increase: the greedy state is not 4 eps-p-EF1.
  doc["mbb"][0] = 1;
  tmp.write("sol.json", doc.dump());
  const Run r = run(tmp, "certify --input " + inst + " --solution " + sol);
  CHECK(r.code == 4);
  CHECK(nsw::parse_json_text(r.out)["ef1_ok"] == false);
}

TEST_CASE("cli solve output is byte-identical across runs") {
  Scratch tmp;
  const std::string inst = tmp.path("r.json").string();
  REQUIRE(run(tmp, "gen --output " + inst + " random --n 3 --m 4 --max-copies 3 --max-util 8 --caps random --seed 5")
              .code == 0);
  const Run a = run(tmp, "solve --input " + inst + " --epsilon 1/8");
  const Run b = run(tmp, "solve --input " + inst + " --epsilon 1/8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("cli bench writes one row per instance") {
  Scratch tmp;
  fs::create_directories(tmp.path("bench"));
  for (int seed = 1; seed <= 3; ++seed) {
    const std::string p = tmp.path("bench/r" + std::to_string(seed) + ".json").string();
    REQUIRE(run(tmp, "gen --output " + p + " random --n 2 --m 3 --seed " + std::to_string(seed)).code == 0);
  }
  tmp.write("bench/zz_bad.json", "{}");
  const std::string csv = tmp.path("out.csv").string();
  const Run r = run(tmp, "bench --dir " + tmp.path("bench").string() + " --epsilon 1/4 --csv " + csv);
  CHECK(r.code == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "id,n,m,M,epsilon,alg_nsw,oracle_nsw,upper_bound,ratio_ub,ratio_opt,iterations,wall_ms");
  int rows = 0;
  std::string last;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 11);
    last = line;
  }
  CHECK(rows == 4);
  CHECK(last.rfind("zz_bad", 0) == 0);
  CHECK(r.err.find("zz_bad") != std::string::npos);
}

TEST_CASE("cli bench over 100 random seeds stays under r * 1.445") {
  Scratch tmp;
  fs::create_directories(tmp.path("many"));
  for (int seed = 1; seed <= 100; ++seed) {
    char name[32];
    std::snprintf(name, sizeof name, "many/r%03d.json", seed);
    REQUIRE(run(tmp, "gen --output " + tmp.path(name).string() + " random --seed " + std::to_string(seed)).code == 0);
  }
  const std::string csv = tmp.path("many.csv").string();
  REQUIRE(run(tmp, "bench --dir " + tmp.path("many").string() + " --epsilon 1/100 --threads 4 --csv " + csv).code == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() >= 9);
    CHECK(cells[0] == (std::string("r") + (rows < 10 ? "00" : rows < 100 ? "0" : "") + std::to_string(rows)));
    CHECK(std::stod(cells[8]) <= 1.01 * 1.445 + 1e-6);
  }
  CHECK(rows == 100);
}
