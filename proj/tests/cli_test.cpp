#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef SEGAME_CLI_PATH
#error "SEGAME_CLI_PATH must name the command-line binary"
#endif
#ifndef SEGAME_DATA_DIR
#error "SEGAME_DATA_DIR must point at the bundled game files"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string temp_path(const char* tag) {
  static int counter = 0;
  std::ostringstream name;
  name << "/tmp/segame_cli_" << getpid() << "_" << counter++ << "_" << tag;
  return name.str();
}

std::string slurp_and_remove(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(path.c_str());
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  std::string out_path = temp_path("out");
  std::string err_path = temp_path("err");
  std::string cmd = std::string(SEGAME_CLI_PATH) + " " + args + " > " +
                    out_path + " 2> " + err_path;
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp_and_remove(out_path);
  r.err = slurp_and_remove(err_path);
  return r;
}

std::string fig1() {
  return std::string(SEGAME_DATA_DIR) + "/fig1.game";
}

}  // namespace

TEST_CASE("validate prints the game dimensions") {
  RunResult r = run_cli("validate " + fig1());
  CHECK(r.code == 0);
  CHECK(r.out == "valid\n6 states, 3 players\n");
  CHECK(r.err.empty());
}

TEST_CASE("failures go to stderr with a named status") {
  RunResult r = run_cli("validate /no/such/file.game");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("error: io-error") == 0);

  RunResult bad = run_cli("se-exists " + fig1() + " --state s0 --constraint 1x1");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error: invalid-argument") == 0);

  RunResult none = run_cli("nonsense");
  CHECK(none.code == 2);
}

TEST_CASE("region prints the sorted winning set") {
  RunResult r = run_cli("region " + fig1() +
                        " --coalition 1,2 --objective "
                        "\"(p1 & p2 & p3) | !p3\"");
  CHECK(r.code == 0);
  CHECK(r.out == "{s0, s1, s2, s4, s5}\n");

  RunResult solo = run_cli("region " + fig1() +
                           " --coalition 1 --objective p1");
  CHECK(solo.code == 0);
  CHECK(solo.out == "{s4}\n");

  RunResult pair = run_cli("region " + fig1() +
                           " --coalition 2,3 --objective \"p2 & p3\"");
  CHECK(pair.code == 0);
  CHECK(pair.out.substr(0, 1) == "{");
}

TEST_CASE("se-exists answers yes and no with matching exit codes") {
  RunResult yes = run_cli("se-exists " + fig1() +
                          " --state s0 --constraint 111");
  CHECK(yes.code == 0);
  CHECK(yes.out == "yes\n{s0, s1, s2}\n");

  RunResult no = run_cli("se-exists " + fig1() +
                         " --state s3 --constraint 111");
  CHECK(no.code == 1);
  CHECK(no.out == "no\n{s0, s1, s2}\n");
}

TEST_CASE("witness then verify round-trips through a file") {
  std::string wpath = temp_path("witness.json");
  RunResult built = run_cli("witness " + fig1() +
                            " --state s0 --constraint 111 --out " + wpath);
  CHECK(built.code == 0);
  CHECK(built.out.find("yes\n") == 0);
  CHECK(built.out.find("memory per player:") != std::string::npos);

  RunResult verified = run_cli("verify " + fig1() + " --witness " + wpath +
                               " --state s0");
  CHECK(verified.code == 0);
  CHECK(verified.out == "secure\n");

  // Redirecting player 1's moves at s0 into the sink breaks security:
  // the others would still cooperate, so player 1 could do better.
  nlohmann::json doc = nlohmann::json::parse(slurp_and_remove(wpath));
  for (auto& row : doc["players"][0]["move"])
    if (row["state"] == "s0") row["to"] = "s3";
  std::string bent_path = temp_path("bent.json");
  std::ofstream(bent_path) << doc.dump();
  RunResult insecure = run_cli("verify " + fig1() + " --witness " + bent_path +
                               " --state s0");
  std::remove(bent_path.c_str());
  CHECK(insecure.code == 1);
  CHECK(insecure.out.find("insecure\n") == 0);
  CHECK(insecure.out.find("can deviate to payoff") != std::string::npos);
}

TEST_CASE("witness reports the refusal for impossible payoffs") {
  std::string wpath = temp_path("nope.json");
  RunResult r = run_cli("witness " + fig1() +
                        " --state s3 --constraint 111 --out " + wpath);
  CHECK(r.code == 1);
  CHECK(r.out.find("no\n") == 0);
  std::remove(wpath.c_str());
}

TEST_CASE("oracle searches bounded profiles from the command line") {
  RunResult hit = run_cli("oracle " + fig1() +
                          " --state s0 --constraint 111 --memory-bound 2");
  CHECK(hit.code == 0);
  CHECK(hit.out == "found witness\n");

  RunResult miss = run_cli("oracle " + fig1() +
                           " --state s3 --constraint 111 --memory-bound 2");
  CHECK(miss.code == 1);
  CHECK(miss.out.find("none within bound\n") == 0);
  CHECK(miss.out.find("not a proof") != std::string::npos);
}

TEST_CASE("json output carries answer, region, and timings") {
  RunResult r = run_cli("--format json se-exists " + fig1() +
                        " --state s0 --constraint 111");
  CHECK(r.code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(doc["answer"] == "yes");
  CHECK(doc["region"] == nlohmann::json::array({"s0", "s1", "s2"}));
  CHECK(doc["timings"]["total_ms"].is_number());
  CHECK(doc["timings"]["parse_ms"].is_number());

  RunResult v = run_cli("--format json validate " + fig1());
  nlohmann::json vdoc = nlohmann::json::parse(v.out);
  CHECK(vdoc["answer"] == "valid");
}

TEST_CASE("help exits cleanly") {
  RunResult r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("validate") != std::string::npos);
}
