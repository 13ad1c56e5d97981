#pragma once

#include <string>

#include "segame/arena.hpp"
#include "segame/secure_eq.hpp"

namespace segame {

// A game file pairs an arena with one objective per player.
struct ParsedGame {
  GameArena arena;
  ObjectiveProfile objectives;
};

// JSON game files: {"players": n, "states": [ids], "owner": {id: player},
// "edges": [[from, to]], "objectives": [descriptor per player]} where a
// descriptor is {"type": "buchi"|"cobuchi", "states": [ids]},
// {"type": "parity", "colors": {id: color}}, {"type": "streett"|"rabin",
// "pairs": [{"fin": [ids], "inf": [ids]}]} or {"type": "muller",
// "formula": text}. Parsing validates everything; errors carry `origin`.
ParsedGame parse_game_text(const std::string& text,
                           const std::string& origin = "<memory>");
ParsedGame parse_game_file(const std::string& path);
std::string serialize_game(const GameArena& arena,
                           const ObjectiveProfile& objectives);
void write_game_file(const std::string& path, const GameArena& arena,
                     const ObjectiveProfile& objectives);

// Witness files list each player's machine as explicit tables:
// {"players": [{"player": k, "memories": [0..], "initial": m,
// "update": [{"memory","state","to"}], "move": [{"memory","state","to"}]}]}
// with one update row per (memory, state) and one move row per
// (memory, owned state).
StrategyProfile parse_witness_text(const std::string& text,
                                   const GameArena& arena,
                                   const std::string& origin = "<memory>");
StrategyProfile parse_witness_file(const std::string& path,
                                   const GameArena& arena);
std::string serialize_witness(const GameArena& arena,
                              const StrategyProfile& profile);
void write_witness_file(const std::string& path, const GameArena& arena,
                        const StrategyProfile& profile);

// Boolean combination of the per-player objectives: atoms p1..pn, `!`
// binds tightest, then `&`, then `|`, parentheses group.
ObjectiveExpr parse_player_expr(const std::string& text,
                                const ObjectiveProfile& objectives);

} // namespace segame
