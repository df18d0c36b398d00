#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "battery.hpp"
#include "lcm/chart_io.hpp"

using namespace lcm;

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(LCMEASURE_BIN) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / "lcm_cli_test";
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string chart(const SncChart& c, const char* name) {
    const fs::path p = dir / name;
    write_chart(p.string(), c);
    return p.string();
  }
  std::string out(const char* name) { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("cli: jumps emits the sorted jump column") {
  Workspace ws;
  const auto& c = lcm::testing::battery().front();  // 1d-basic
  const std::string chart = ws.chart(c.chart, "c.json");
  REQUIRE(run("jumps --chart " + chart + " --m-max 3 --out " + ws.out("j.csv")) == 0);
  const std::string text = slurp(ws.out("j.csv"));
  CHECK(text.find("jump\n1\n2\n3\n") != std::string::npos);
  CHECK(text.find("# lcmeasure") != std::string::npos);
  CHECK(text.find("reduced = true") != std::string::npos);
}

TEST_CASE("cli: m1 not a jump exits with the precondition code") {
  Workspace ws;
  SncChart bad = lcm::testing::battery().front().chart;
  bad.m1 = Rat{1, 2};  // family jumps at 1, not 1/2
  const std::string chart = ws.chart(bad, "bad.json");
  CHECK(run("jumps --chart " + chart) == 2);
}

TEST_CASE("cli: invalid chart exits with the precondition code") {
  Workspace ws;
  SncChart bad = lcm::testing::battery().front().chart;
  bad.psi.shift = 1.0;
  const std::string chart = ws.chart(bad, "bad2.json");
  CHECK(run("jumps --chart " + chart) == 2);
  CHECK(run("lcv --chart " + chart) == 2);
}

TEST_CASE("cli: jumps works without sections") {
  Workspace ws;
  SncChart chart = lcm::testing::battery().front().chart;
  chart.sections.clear();
  const std::string path = ws.chart(chart, "nosec.json");
  CHECK(run("jumps --chart " + path + " --out " + ws.out("ns.csv")) == 0);
}

TEST_CASE("cli: ideal prints the generator exponents") {
  Workspace ws;
  SncChart chart;
  chart.n = 2;
  chart.radii = {0.5, 0.5};
  chart.phi_L.coeffs = {Rat{2}, Rat{1, 2}};
  chart.psi.coeffs = {Rat{1}, Rat{1}};
  chart.m0 = Rat{0};
  chart.m1 = Rat{1, 2};
  const std::string path = ws.chart(chart, "ideal.json");
  REQUIRE(run("ideal --chart " + path + " --m 0 --out " + ws.out("i.csv")) == 0);
  const std::string text = slurp(ws.out("i.csv"));
  CHECK(text.find("1,2\n2,0\n") != std::string::npos);
}

TEST_CASE("cli: lcv emits the trichotomy with the finite row near 2 pi") {
  Workspace ws;
  const auto& c = lcm::testing::battery().front();
  const std::string chart = ws.chart(c.chart, "c.json");
  REQUIRE(run("lcv --chart " + chart + " --out " + ws.out("l.csv")) == 0);
  const std::string text = slurp(ws.out("l.csv"));
  CHECK(text.find("0,divergent") != std::string::npos);
  CHECK(text.find("1,finite,6.28318") != std::string::npos);
}

TEST_CASE("cli: verify-weights passes normalised, fails de-normalised with code 4") {
  Workspace ws;
  CHECK(run("verify-weights --sigma 1 --ell 0.1 --delta 0.1 --eps 0.001 --out " +
            ws.out("w.csv")) == 0);
  // grid reaching shallower than the normalisation floor must fail
  CHECK(run("verify-weights --sigma 1 --ell 0.1 --delta 0.1 --eps 0.001 "
            "--grid 30,1e6,512 --out " + ws.out("w2.csv")) == 4);
  const std::string text = slurp(ws.out("w2.csv"));
  CHECK(text.find(",0\n") != std::string::npos);  // a failing row is visible
}

TEST_CASE("cli: extend emits per-stage margins that pass") {
  Workspace ws;
  const auto& sc = lcm::testing::staged_battery().front();  // two stages
  const std::string chart = ws.chart(sc.chart, "staged.json");
  REQUIRE(run("extend --chart " + chart + " --out " + ws.out("e.csv")) == 0);
  const std::string text = slurp(ws.out("e.csv"));
  CHECK(text.find("sigma,lhs,rhs,margin,tolerance,pass") != std::string::npos);
  CHECK(text.find("\n2,") != std::string::npos);
  CHECK(text.find("\n1,") != std::string::npos);
}

TEST_CASE("cli: integrability reports the pole limit near pi/2") {
  Workspace ws;
  REQUIRE(run("integrability --ladder 3,0.5 --member 0,0,2 --out " +
              ws.out("g.csv")) == 0);
  const std::string text = slurp(ws.out("g.csv"));
  CHECK(text.find("log_pole_limit") != std::string::npos);
  CHECK(text.find("1.5707") != std::string::npos);
  CHECK(text.find("continuation_ladder,3,0.5,,4,3 2.5 2 1.5 1") != std::string::npos);
}

TEST_CASE("cli: malformed chart file gives a parse diagnostic and code 2") {
  Workspace ws;
  const fs::path bad = ws.dir / "broken.json";
  std::ofstream(bad) << "{\"version\": 1,";
  CHECK(run("jumps --chart " + bad.string()) == 2);
}

TEST_CASE("cli: byte-reproducible across runs and thread counts") {
  Workspace ws;
  const auto& c = lcm::testing::battery()[8];  // 2d-origin
  const std::string chart = ws.chart(c.chart, "c.json");
  for (const std::string cmd :
       {std::string("lcv --chart ") + chart,
        std::string("extend --chart ") + chart,
        std::string("jumps --chart ") + chart,
        std::string("verify-weights --sigma 2 --ell 1 --delta 1 --eps 0.001")}) {
    CAPTURE(cmd);
    REQUIRE(run(cmd + " --threads 1 --out " + ws.out("r1.csv")) == 0);
    REQUIRE(run(cmd + " --threads 1 --out " + ws.out("r2.csv")) == 0);
    REQUIRE(run(cmd + " --threads 2 --out " + ws.out("r3.csv")) == 0);
    const std::string a = slurp(ws.out("r1.csv"));
    CHECK(a == slurp(ws.out("r2.csv")));
    CHECK(a == slurp(ws.out("r3.csv")));
    CHECK(!a.empty());
  }
}
