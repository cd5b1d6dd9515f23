#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = fptenum::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto dir = fs::temp_directory_path() / "fptenum_cli_test";
  fs::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("vc subcommand", "[cli]") {
  auto g = write_temp("tri.graph", "p graph 3 3\ne 0 1\ne 1 2\ne 0 2\n");
  auto r = run({"vc", "--graph", g, "-k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1\n0 2\n1 2\n");
  CHECK(run({"vc", "--graph", g, "-k", "2", "--count"}).out == "3\n");
  auto no = run({"vc", "--graph", g, "-k", "1", "--exists"});
  CHECK(no.code == 1);
  CHECK(no.out == "no\n");
  CHECK(run({"vc", "--graph", g, "-k", "1"}).code == 0);
}

TEST_CASE("maxones subcommand", "[cli]") {
  auto f = write_temp("or.gamma", "nvars 2\nrelation OR 2 { 01 10 11 }\nconstraint OR 0 1\n");
  auto r = run({"maxones", "--formula", f, "-k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0 1\n1\n0\n");
  CHECK(run({"maxones", "--formula", f, "-k", "2", "--oracle", "brute", "--exists"}).code == 0);
  CHECK(run({"maxones", "--formula", f, "-k", "3", "--exists"}).code == 1);
  auto bad = run({"maxones", "--formula", f, "-k", "1", "--oracle", "affine"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("does not apply") != std::string::npos);
}

TEST_CASE("backdoor subcommand prints 1-based variables", "[cli]") {
  auto c = write_temp("xyz.cnf", "p cnf 3 1\n1 2 -3 0\n");
  auto r = run({"backdoor", "--cnf", c, "-k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n2\n");
  CHECK(run({"backdoor", "--cnf", c, "-k", "0", "--exists"}).code == 1);
}

TEST_CASE("classify subcommand", "[cli]") {
  auto f = write_temp("lang.gamma", "relation XOR 2 { 01 10 }\n");
  auto r = run({"classify", "--language", f});
  CHECK(r.code == 0);
  CHECK(r.out.find("relation XOR arity=2 tuples=2") != std::string::npos);
  CHECK(r.out.find("affine=1") != std::string::npos);
  CHECK(r.out.find("oracle affine") != std::string::npos);
}

TEST_CASE("input errors exit with 2 and name the line", "[cli]") {
  auto g = write_temp("loop.graph", "c header next\np graph 2 1\ne 1 1\n");
  auto r = run({"vc", "--graph", g, "-k", "1"});
  CHECK(r.code == 2);
  CHECK(r.err == "error: " + g + ":3: self-loop on vertex 1\n");

  auto c = write_temp("bad.cnf", "p cnf 2 1\n1 5 0\n");
  auto rc = run({"backdoor", "--cnf", c, "-k", "1"});
  CHECK(rc.code == 2);
  CHECK(rc.err.find(c + ":2:") != std::string::npos);

  auto f = write_temp("bad.gamma", "nvars 1\nrelation R 1 { 1 }\nconstraint Q 0\n");
  auto rf = run({"maxones", "--formula", f, "-k", "0"});
  CHECK(rf.code == 2);
  CHECK(rf.err.find(f + ":3: unknown relation 'Q'") != std::string::npos);

  CHECK(run({"vc", "--graph", "/nonexistent/file", "-k", "1"}).code == 2);
  CHECK(run({"vc", "-k", "1"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"vc", "--graph", g, "-k", "-1"}).code == 2);
}

TEST_CASE("generate and profile", "[cli]") {
  auto r = run({"generate", "planted-graph", "-n", "12", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("p graph 12 ", 0) == 0);

  auto dir = fs::temp_directory_path() / "fptenum_cli_test" / "csv";
  auto json = (fs::temp_directory_path() / "fptenum_cli_test" / "profile.json").string();
  auto p = run({"profile", "vc", "--sizes", "20,40", "-k", "3", "--seed", "7", "--json", json, "--csv-dir",
                dir.string()});
  CHECK(p.code == 0);
  CHECK(p.out.find("growth vc k=3 20->40") != std::string::npos);
  CHECK(fs::exists(dir / "vc_n20.csv"));
  std::ifstream in(json);
  auto doc = nlohmann::json::parse(in);
  CHECK(doc["runs"].size() == 2);

  CHECK(run({"profile", "nosuch", "--sizes", "20"}).code == 2);
  CHECK(run({"generate", "nosuch"}).code == 2);
}
