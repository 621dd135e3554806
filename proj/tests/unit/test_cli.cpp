#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PMKIT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "pmkit_cli_test";
  TempDir() { std::filesystem::create_directories(path); }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string at(const std::string& name) const { return (path / name).string(); }
};

json read(const std::string& p) { return json::parse(std::ifstream(p)); }

}  // namespace

TEST_CASE("classify on the 2x2 example") {
  TempDir d;
  const std::string in = d.file("ex.json", R"({"n":2,"rows":[[-1,-1],[4,3]]})");
  const Run r = run("classify --input " + in + " --out " + d.at("r.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("P: no, witness {1}") != std::string::npos);
  const json j = read(d.at("r.json"));
  CHECK(j["command"] == "classify");
  CHECK(j["exit_code"] == 0);
  CHECK(j["result"]["verdicts"]["P"] == "no");
  CHECK(j["result"]["witnesses"]["P"] == json::array({1}));
  CHECK(j["tolerances"]["minor"] == 1e-10);
}

TEST_CASE("tolerance overrides are embedded in the report") {
  TempDir d;
  const std::string in = d.file("id.csv", "1,0\n0,1\n");
  const Run r = run("classify --input " + in + " --tol-minor 1e-6 --out " + d.at("r.json"));
  CHECK(r.code == 0);
  CHECK(read(d.at("r.json"))["tolerances"]["minor"] == 1e-6);
  CHECK(run("classify --input " + in + " --tol-minor -1").code == 2);
  CHECK(run("classify --input " + in + " --tol-sing 0").code == 2);
}

TEST_CASE("pset values") {
  const Run r = run("pset --values \"1,1\"");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["result"]["P_set"] == "yes");
  CHECK(j["result"]["sigma"] == json::array({2.0, 1.0}));

  const Run a = run("pset --values \"-1+2i,-1-2i\" --augment");
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["result"]["augmentation"]["additions"] == json::array({2.25}));
  CHECK(run("pset --values \"1+2i\"").code == 2);
}

TEST_CASE("factor on the identity") {
  TempDir d;
  const std::string in = d.file("id.json", R"({"n":2,"rows":[[1,0],[0,1]]})");
  const Run r = run("factor --input " + in);
  CHECK(r.code == 0);
  const json j = json::parse(r.out)["result"];
  CHECK(j["factor_left"]["rows"] == json::parse("[[1.0,0.0],[0.0,1.0]]"));
  CHECK(j["factor_right"]["rows"] == json::parse("[[1.0,0.0],[0.0,1.0]]"));
  const std::string ex = d.file("ex.json", R"({"n":2,"rows":[[-1,-1],[4,3]]})");
  CHECK(run("factor --input " + ex).code == 2);
}

TEST_CASE("lcp commands") {
  TempDir d;
  const std::string in = d.file("l.json", R"({"m":{"n":2,"rows":[[2,-1],[-1,2]]},"q":[-3,-3]})");
  const Run s = run("lcp solve --input " + in);
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["result"]["solution"]["z"][0].get<double>() == doctest::Approx(3.0));
  const Run e = run("lcp enumerate --input " + in);
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["result"]["solutions"].size() == 1);
  const std::string ex = d.file("ex.json", R"({"n":2,"rows":[[-1,-1],[4,3]]})");
  const Run c = run("lcp census --input " + ex + " --trials 200 --seed 3");
  CHECK(c.code == 0);
  CHECK(json::parse(c.out)["result"]["verdict"] == "violation");
}

TEST_CASE("opsim commands") {
  TempDir d;
  const std::string spec = d.file(
      "s.json", R"({"kind":"diagonal","rule":{"name":"inverse-square-diagonal","params":{"c":1}},"decay":true})");
  const Run sq = run("opsim sqrt --spec " + spec + " --order 4");
  CHECK(sq.code == 0);
  CHECK(json::parse(sq.out)["result"]["result"]["residual"].get<double>() <= 1e-12);
  CHECK(run("opsim minmax --spec " + spec + " --order 3").code == 0);
  CHECK(run("opsim csuff --spec " + spec + " --order 3").code == 0);
  CHECK(run("opsim rev --spec " + spec + " --order 2 --x \"1,-1\"").code == 0);
  CHECK(run("opsim interp --spec " + spec + " --spec-t " + spec + " --order 3 --trials 20").code == 0);
  const std::string band = d.file("b.json", R"({"kind":"banded","rule":{"name":"tridiag","params":{}}})");
  CHECK(run("opsim sqrt --spec " + band + " --order 4").code == 2);
}

TEST_CASE("gen is deterministic and reusable as input") {
  TempDir d;
  CHECK(run("gen --class P-diagdom --n 6 --seed 7 --out " + d.at("a.json")).code == 0);
  CHECK(run("gen --class P-diagdom --n 6 --seed 7 --out " + d.at("b.json")).code == 0);
  CHECK(read(d.at("a.json")) == read(d.at("b.json")));
  const Run r = run("classify --input " + d.at("a.json") + " --out " + d.at("r.json"));
  CHECK(r.code == 0);
  CHECK(read(d.at("r.json"))["result"]["verdicts"]["P"] == "yes");
  CHECK(run("gen --class bogus --n 3").code == 2);
}

TEST_CASE("reports are identical apart from the timestamp") {
  TempDir d;
  CHECK(run("suite cayley --seed 2 --out " + d.at("a.json")).code == 0);
  CHECK(run("suite cayley --seed 2 --out " + d.at("b.json")).code == 0);
  json a = read(d.at("a.json")), b = read(d.at("b.json"));
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);
}

TEST_CASE("seed fallback from the environment") {
  TempDir d;
  const std::string in = d.file("ex.json", R"({"n":2,"rows":[[-1,-1],[4,3]]})");
  const Run r = run("lcp census --input " + in + " --trials 5 --out " + d.at("r.json"));
  CHECK(r.code == 0);
  CHECK(read(d.at("r.json"))["seed"] == 0);
  const std::string cmd = "PMKIT_SEED=9 " + std::string(PMKIT_CLI) + " lcp census --input " + in +
                          " --trials 5 --out " + d.at("e.json") + " >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(read(d.at("e.json"))["seed"] == 9);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("suite bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("classify").code == 2);
  CHECK(run("classify --input /nonexistent/m.json").code == 2);
  CHECK(run("classify --bogus-flag").code == 2);
  TempDir d;
  CHECK(run("classify --input " + d.file("bad.json", R"({"n":2,"rows":[[1]]})")).code == 2);
  CHECK(run("classify --input " + d.file("nan.csv", "1,nan\n0,1\n")).code == 2);
}
