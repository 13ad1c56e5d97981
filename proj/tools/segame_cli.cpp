// Command-line front end for the secure-equilibrium solver; talks to the
// solver library exclusively through its C interface.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segame/segame.h"

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct GamePtr {
  sg_game* g = nullptr;
  ~GamePtr() { sg_game_free(g); }
};
struct RegionPtr {
  sg_region* r = nullptr;
  ~RegionPtr() { sg_region_free(r); }
};
struct WitnessPtr {
  sg_witness* w = nullptr;
  ~WitnessPtr() { sg_witness_free(w); }
};

int report_failure(sg_status st) {
  std::cerr << "error: " << sg_status_name(st) << ": " << sg_last_error()
            << "\n";
  return 2;
}

std::vector<std::string> region_ids(const sg_game* g, const sg_region* r) {
  std::vector<std::string> ids;
  for (size_t s = 0; s < sg_game_state_count(g); ++s)
    if (sg_region_contains(r, s)) ids.push_back(sg_game_state_id(g, s));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string braces(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ", ";
    out += ids[k];
  }
  out += "}";
  return out;
}

// Shared output shape: human text or {answer, region, timings} JSON.
struct Report {
  std::string format = "text";
  std::string answer;
  std::vector<std::string> region;
  std::vector<std::string> lines;  // extra text-mode lines
  double parse_ms = 0;
  double solve_ms = 0;
  bool with_region = false;

  void print() const {
    if (format == "json") {
      ordered_json doc;
      doc["answer"] = answer;
      doc["region"] = region;
      doc["timings"] = {{"parse_ms", parse_ms},
                        {"solve_ms", solve_ms},
                        {"total_ms", parse_ms + solve_ms}};
      std::cout << doc.dump(2) << "\n";
      return;
    }
    std::cout << answer << "\n";
    if (with_region) std::cout << braces(region) << "\n";
    for (const auto& line : lines) std::cout << line << "\n";
  }
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"secure-equilibrium solver for multiplayer graph games"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string file, state, constraint, objective, witness_path, out_path;
  std::vector<unsigned> coalition;
  size_t memory_bound = 2;
  size_t budget = 0;
  app.add_option("--budget", budget,
                 "solver size budget (0 keeps the default)");

  auto* validate = app.add_subcommand("validate", "parse and check a game");
  validate->add_option("file", file, "game file")->required();

  auto* region_cmd =
      app.add_subcommand("region", "coalition winning region");
  region_cmd->add_option("file", file, "game file")->required();
  region_cmd->add_option("--coalition", coalition, "coalition players")
      ->required()
      ->delimiter(',');
  region_cmd
      ->add_option("--objective", objective,
                   "objective expression over p1..pn")
      ->required();

  auto* se_exists =
      app.add_subcommand("se-exists", "decide secure-equilibrium existence");
  se_exists->add_option("file", file, "game file")->required();
  se_exists->add_option("--state", state, "start state")->required();
  se_exists->add_option("--constraint", constraint, "payoff bits")->required();

  auto* witness_cmd =
      app.add_subcommand("witness", "build a witness strategy profile");
  witness_cmd->add_option("file", file, "game file")->required();
  witness_cmd->add_option("--state", state, "start state")->required();
  witness_cmd->add_option("--constraint", constraint, "payoff bits")
      ->required();
  witness_cmd->add_option("--out", out_path, "witness output file")
      ->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "check a witness for security");
  verify_cmd->add_option("file", file, "game file")->required();
  verify_cmd->add_option("--witness", witness_path, "witness file")
      ->required();
  verify_cmd->add_option("--state", state, "start state")->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "bounded exhaustive secure-equilibrium search");
  oracle_cmd->add_option("file", file, "game file")->required();
  oracle_cmd->add_option("--state", state, "start state")->required();
  oracle_cmd->add_option("--constraint", constraint, "payoff bits")
      ->required();
  oracle_cmd->add_option("--memory-bound", memory_bound,
                         "strategy look-back bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (budget) sg_set_solver_budget(budget);

  Report rep;
  rep.format = format;

  auto parse_start = Clock::now();
  GamePtr game;
  if (sg_status st = sg_game_parse_file(file.c_str(), &game.g))
    return report_failure(st);
  rep.parse_ms = ms_since(parse_start);

  auto solve_start = Clock::now();

  if (*validate) {
    rep.answer = "valid";
    rep.lines.push_back(std::to_string(sg_game_state_count(game.g)) +
                        " states, " +
                        std::to_string(sg_game_player_count(game.g)) +
                        " players");
    rep.solve_ms = ms_since(solve_start);
    rep.print();
    return 0;
  }

  if (*region_cmd) {
    RegionPtr region;
    if (sg_status st = sg_region_coalition(game.g, coalition.data(),
                                           coalition.size(),
                                           objective.c_str(), &region.r))
      return report_failure(st);
    rep.answer = "ok";
    rep.region = region_ids(game.g, region.r);
    rep.with_region = true;
    rep.solve_ms = ms_since(solve_start);
    if (rep.format == "text") {
      std::cout << braces(rep.region) << "\n";
      return 0;
    }
    rep.print();
    return 0;
  }

  if (*se_exists) {
    RegionPtr region;
    if (sg_status st = sg_region_se(game.g, constraint.c_str(), &region.r))
      return report_failure(st);
    size_t idx = 0;
    if (sg_status st = sg_game_state_index(game.g, state.c_str(), &idx))
      return report_failure(st);
    bool yes = sg_region_contains(region.r, idx) != 0;
    rep.answer = yes ? "yes" : "no";
    rep.region = region_ids(game.g, region.r);
    rep.with_region = true;
    rep.solve_ms = ms_since(solve_start);
    rep.print();
    return yes ? 0 : 1;
  }

  if (*witness_cmd) {
    WitnessPtr witness;
    sg_status st = sg_witness_build(game.g, state.c_str(), constraint.c_str(),
                                    &witness.w);
    if (st == SG_ERR_NO_WITNESS) {
      rep.answer = "no";
      rep.lines.push_back(sg_last_error());
      rep.solve_ms = ms_since(solve_start);
      rep.print();
      return 1;
    }
    if (st) return report_failure(st);
    if (sg_status wst =
            sg_witness_write_file(game.g, witness.w, out_path.c_str()))
      return report_failure(wst);
    rep.answer = "yes";
    std::string sizes = "memory per player:";
    for (unsigned p = 1; p <= sg_game_player_count(game.g); ++p)
      sizes += " " + std::to_string(sg_witness_memory_count(witness.w, p));
    rep.lines.push_back("witness written to " + out_path);
    rep.lines.push_back(sizes);
    rep.solve_ms = ms_since(solve_start);
    rep.print();
    return 0;
  }

  if (*verify_cmd) {
    WitnessPtr witness;
    if (sg_status st = sg_witness_parse_file(game.g, witness_path.c_str(),
                                             &witness.w))
      return report_failure(st);
    int secure = 0;
    unsigned deviator = 0;
    char* achievable = nullptr;
    if (sg_status st = sg_verify(game.g, witness.w, state.c_str(), &secure,
                                 &deviator, &achievable))
      return report_failure(st);
    rep.solve_ms = ms_since(solve_start);
    if (secure) {
      rep.answer = "secure";
      rep.print();
      return 0;
    }
    rep.answer = "insecure";
    rep.lines.push_back("player " + std::to_string(deviator) +
                        " can deviate to payoff " +
                        std::string(achievable ? achievable : "?"));
    sg_text_free(achievable);
    rep.print();
    return 1;
  }

  if (*oracle_cmd) {
    int found = 0;
    WitnessPtr witness;
    if (sg_status st = sg_oracle_bounded_se(game.g, state.c_str(),
                                            constraint.c_str(), memory_bound,
                                            &found, &witness.w))
      return report_failure(st);
    rep.solve_ms = ms_since(solve_start);
    if (found) {
      rep.answer = "found witness";
      rep.print();
      return 0;
    }
    rep.answer = "none within bound";
    rep.lines.push_back(
        "exhausted all profiles with look-back <= " +
        std::to_string(memory_bound) +
        "; evidence against existence, not a proof");
    rep.print();
    return 1;
  }

  std::cerr << "error: no subcommand\n";
  return 2;
}
