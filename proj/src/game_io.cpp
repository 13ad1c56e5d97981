#include "segame/game_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "segame/formula.hpp"

namespace segame {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
  fail(Errc::parse_error, origin + ": " + what);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot write " + path);
  out << text;
  if (!out) fail(Errc::io_error, "write to " + path + " failed");
}

StateSet id_set(const json& ids, const GameArena& arena,
                const std::string& origin) {
  StateSet out(arena.size());
  for (const auto& id : ids) {
    auto s = arena.find(id.get<std::string>());
    if (!s) bad(origin, "unknown state " + id.get<std::string>());
    out.set(*s);
  }
  return out;
}

Objective parse_objective(const json& desc, const GameArena& arena,
                          const std::string& origin) {
  std::string type = desc.at("type").get<std::string>();
  if (type == "buchi") return Objective::buchi(id_set(desc.at("states"),
                                                      arena, origin));
  if (type == "cobuchi") return Objective::cobuchi(id_set(desc.at("states"),
                                                          arena, origin));
  if (type == "parity") {
    const auto& map = desc.at("colors");
    std::vector<unsigned> colors(arena.size(), 0);
    std::vector<bool> seen(arena.size(), false);
    for (const auto& [id, color] : map.items()) {
      auto s = arena.find(id);
      if (!s) bad(origin, "unknown state " + id + " in coloring");
      colors[*s] = color.get<unsigned>();
      seen[*s] = true;
    }
    for (State s = 0; s < arena.size(); ++s)
      if (!seen[s]) bad(origin, "state " + arena.id_of(s) + " has no color");
    return Objective::parity(std::move(colors));
  }
  if (type == "streett" || type == "rabin") {
    std::vector<AccPair> pairs;
    for (const auto& pair : desc.at("pairs"))
      pairs.push_back({id_set(pair.at("fin"), arena, origin),
                       id_set(pair.at("inf"), arena, origin)});
    return type == "streett" ? Objective::streett(std::move(pairs))
                             : Objective::rabin(std::move(pairs));
  }
  if (type == "muller")
    return Objective::muller(
        Formula::parse(desc.at("formula").get<std::string>(), arena),
        arena.size());
  bad(origin, "unknown objective type \"" + type + "\"");
}

json objective_to_json(const Objective& o, const GameArena& arena) {
  auto ids = [&](const StateSet& s) {
    json out = json::array();
    for (State st : s.members()) out.push_back(arena.id_of(st));
    return out;
  };
  json desc;
  switch (o.cls()) {
    case ObjClass::buchi:
      desc["type"] = "buchi";
      desc["states"] = ids(o.target());
      break;
    case ObjClass::cobuchi:
      desc["type"] = "cobuchi";
      desc["states"] = ids(o.target());
      break;
    case ObjClass::parity: {
      desc["type"] = "parity";
      json colors;
      for (State s = 0; s < arena.size(); ++s)
        colors[arena.id_of(s)] = o.colors()[s];
      desc["colors"] = std::move(colors);
      break;
    }
    case ObjClass::streett:
    case ObjClass::rabin: {
      desc["type"] = o.cls() == ObjClass::streett ? "streett" : "rabin";
      json pairs = json::array();
      for (const auto& p : o.pairs())
        pairs.push_back({{"fin", ids(p.fin)}, {"inf", ids(p.inf)}});
      desc["pairs"] = std::move(pairs);
      break;
    }
    case ObjClass::muller:
      desc["type"] = "muller";
      desc["formula"] = o.formula().to_string(arena);
      break;
  }
  return desc;
}

} // namespace

ParsedGame parse_game_text(const std::string& text,
                           const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(origin, e.what());
  }
  try {
    ParsedGame game;
    unsigned players = doc.at("players").get<unsigned>();
    game.arena.set_player_count(players);
    const auto& owner = doc.at("owner");
    for (const auto& id : doc.at("states")) {
      std::string name = id.get<std::string>();
      if (!owner.contains(name)) bad(origin, "state " + name + " has no owner");
      game.arena.add_state(name, owner.at(name).get<unsigned>());
    }
    for (const auto& edge : doc.at("edges")) {
      if (!edge.is_array() || edge.size() != 2)
        bad(origin, "edges must be [from, to] pairs");
      game.arena.add_edge(edge[0].get<std::string>(),
                          edge[1].get<std::string>());
    }
    game.arena.validate();
    const auto& objectives = doc.at("objectives");
    if (objectives.size() != players)
      bad(origin, "expected " + std::to_string(players) + " objectives, got " +
                      std::to_string(objectives.size()));
    for (const auto& desc : objectives) {
      Objective o = parse_objective(desc, game.arena, origin);
      o.check_against(game.arena);
      game.objectives.push_back(ObjectiveExpr::lit(std::move(o)));
    }
    return game;
  } catch (const nlohmann::json::exception& e) {
    bad(origin, e.what());
  } catch (const Error& e) {
    if (e.code == Errc::parse_error) throw;
    fail(e.code, origin + ": " + e.what());
  }
}

ParsedGame parse_game_file(const std::string& path) {
  return parse_game_text(slurp(path), path);
}

std::string serialize_game(const GameArena& arena,
                           const ObjectiveProfile& objectives) {
  arena.validate();
  json doc;
  doc["players"] = arena.player_count();
  json states = json::array();
  json owner;
  for (State s = 0; s < arena.size(); ++s) {
    states.push_back(arena.id_of(s));
    owner[arena.id_of(s)] = arena.owner(s);
  }
  doc["states"] = std::move(states);
  doc["owner"] = std::move(owner);
  json edges = json::array();
  for (State s = 0; s < arena.size(); ++s)
    for (State t : arena.successors(s))
      edges.push_back({arena.id_of(s), arena.id_of(t)});
  doc["edges"] = std::move(edges);
  json objs = json::array();
  for (const auto& e : objectives) {
    if (e.kind() != ObjectiveExpr::Kind::lit)
      fail(Errc::io_error, "only base objectives serialize to game files");
    objs.push_back(objective_to_json(e.leaf(), arena));
  }
  doc["objectives"] = std::move(objs);
  return doc.dump(2) + "\n";
}

void write_game_file(const std::string& path, const GameArena& arena,
                     const ObjectiveProfile& objectives) {
  spill(path, serialize_game(arena, objectives));
}

StrategyProfile parse_witness_text(const std::string& text,
                                   const GameArena& arena,
                                   const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(origin, e.what());
  }
  try {
    StrategyProfile profile;
    for (const auto& entry : doc.at("players")) {
      MooreStrategy ms;
      ms.player = entry.at("player").get<unsigned>();
      ms.memory_count = entry.at("memories").size();
      ms.initial = entry.at("initial").get<std::size_t>();
      ms.update.assign(ms.memory_count,
                       std::vector<std::size_t>(arena.size(), SIZE_MAX));
      ms.move.assign(ms.memory_count, std::vector<State>(
                                          arena.size(), MooreStrategy::no_move));
      for (const auto& row : entry.at("update")) {
        std::size_t mem = row.at("memory").get<std::size_t>();
        auto s = arena.find(row.at("state").get<std::string>());
        if (!s || mem >= ms.memory_count)
          bad(origin, "update row outside the machine");
        ms.update[mem][*s] = row.at("to").get<std::size_t>();
      }
      for (const auto& row : entry.at("move")) {
        std::size_t mem = row.at("memory").get<std::size_t>();
        auto s = arena.find(row.at("state").get<std::string>());
        if (!s || mem >= ms.memory_count)
          bad(origin, "move row outside the machine");
        auto t = arena.find(row.at("to").get<std::string>());
        if (!t) bad(origin, "move row to unknown state");
        ms.move[mem][*s] = *t;
      }
      for (std::size_t m = 0; m < ms.memory_count; ++m)
        for (State s = 0; s < arena.size(); ++s)
          if (ms.update[m][s] == SIZE_MAX)
            bad(origin, "missing update row for memory " + std::to_string(m) +
                            " at " + arena.id_of(s));
      profile.players.push_back(std::move(ms));
    }
    profile.check_against(arena);
    return profile;
  } catch (const nlohmann::json::exception& e) {
    bad(origin, e.what());
  } catch (const Error& e) {
    if (e.code == Errc::parse_error) throw;
    fail(e.code, origin + ": " + e.what());
  }
}

StrategyProfile parse_witness_file(const std::string& path,
                                   const GameArena& arena) {
  return parse_witness_text(slurp(path), arena, path);
}

std::string serialize_witness(const GameArena& arena,
                              const StrategyProfile& profile) {
  profile.check_against(arena);
  json doc;
  json players = json::array();
  for (const auto& ms : profile.players) {
    json entry;
    entry["player"] = ms.player;
    json memories = json::array();
    for (std::size_t m = 0; m < ms.memory_count; ++m) memories.push_back(m);
    entry["memories"] = std::move(memories);
    entry["initial"] = ms.initial;
    json update = json::array();
    json move = json::array();
    for (std::size_t m = 0; m < ms.memory_count; ++m)
      for (State s = 0; s < arena.size(); ++s) {
        update.push_back({{"memory", m},
                          {"state", arena.id_of(s)},
                          {"to", ms.update[m][s]}});
        if (ms.move[m][s] != MooreStrategy::no_move)
          move.push_back({{"memory", m},
                          {"state", arena.id_of(s)},
                          {"to", arena.id_of(ms.move[m][s])}});
      }
    entry["update"] = std::move(update);
    entry["move"] = std::move(move);
    players.push_back(std::move(entry));
  }
  doc["players"] = std::move(players);
  return doc.dump(2) + "\n";
}

void write_witness_file(const std::string& path, const GameArena& arena,
                        const StrategyProfile& profile) {
  spill(path, serialize_witness(arena, profile));
}

// ---------------------------------------------------------------------------
// Player-objective expressions (p1 & !p2 | p3).

namespace {

struct ExprParser {
  const std::string& text;
  const ObjectiveProfile& objectives;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(
                                    text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void reject(const std::string& why) {
    fail(Errc::parse_error,
         "objective expression, offset " + std::to_string(pos) + ": " + why);
  }

  ObjectiveExpr parse() {
    ObjectiveExpr e = disjunction();
    skip();
    if (pos != text.size()) reject("trailing input");
    return e;
  }

  ObjectiveExpr disjunction() {
    std::vector<ObjectiveExpr> kids{conjunction()};
    while (eat('|')) kids.push_back(conjunction());
    return ObjectiveExpr::disj(std::move(kids));
  }

  ObjectiveExpr conjunction() {
    std::vector<ObjectiveExpr> kids{factor()};
    while (eat('&')) kids.push_back(factor());
    return ObjectiveExpr::conj(std::move(kids));
  }

  ObjectiveExpr factor() {
    if (eat('!')) return ObjectiveExpr::negation(factor());
    if (eat('(')) {
      ObjectiveExpr e = disjunction();
      if (!eat(')')) reject("expected )");
      return e;
    }
    skip();
    if (pos >= text.size() || text[pos] != 'p') reject("expected p<k>");
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(
                                    text[pos])))
      ++pos;
    if (pos == start) reject("expected player number after p");
    std::size_t k = std::stoul(text.substr(start, pos - start));
    if (k < 1 || k > objectives.size())
      reject("player " + std::to_string(k) + " out of range");
    return objectives[k - 1];
  }
};

} // namespace

ObjectiveExpr parse_player_expr(const std::string& text,
                                const ObjectiveProfile& objectives) {
  ExprParser p{text, objectives};
  return p.parse();
}

} // namespace segame
