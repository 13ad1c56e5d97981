#include "segame/segame.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "segame/game_io.hpp"
#include "segame/oracle.hpp"
#include "segame/secure_eq.hpp"
#include "segame/zero_sum.hpp"

struct sg_game {
  segame::ParsedGame g;
};
struct sg_region {
  segame::Region r;
};
struct sg_witness {
  segame::StrategyProfile p;
};

namespace {

thread_local std::string t_last_error;

sg_status map_errc(segame::Errc c) {
  using segame::Errc;
  switch (c) {
    case Errc::ok: return SG_OK;
    case Errc::duplicate_state: return SG_ERR_DUPLICATE_STATE;
    case Errc::unknown_owner: return SG_ERR_UNKNOWN_OWNER;
    case Errc::player_out_of_range: return SG_ERR_PLAYER_OUT_OF_RANGE;
    case Errc::dangling_edge: return SG_ERR_DANGLING_EDGE;
    case Errc::dead_end_state: return SG_ERR_DEAD_END_STATE;
    case Errc::unknown_state: return SG_ERR_UNKNOWN_STATE;
    case Errc::foreign_state: return SG_ERR_FOREIGN_STATE;
    case Errc::empty_arena: return SG_ERR_EMPTY_ARENA;
    case Errc::bad_objective: return SG_ERR_BAD_OBJECTIVE;
    case Errc::shape_mismatch: return SG_ERR_SHAPE_MISMATCH;
    case Errc::memory_budget_exceeded: return SG_ERR_MEMORY_BUDGET;
    case Errc::budget_exceeded: return SG_ERR_BUDGET;
    case Errc::parse_error: return SG_ERR_PARSE;
    case Errc::invalid_lasso: return SG_ERR_INVALID_LASSO;
    case Errc::invalid_profile: return SG_ERR_INVALID_PROFILE;
    case Errc::no_witness: return SG_ERR_NO_WITNESS;
    case Errc::io_error: return SG_ERR_IO;
    case Errc::invalid_argument: return SG_ERR_INVALID_ARGUMENT;
  }
  return SG_ERR_INTERNAL;
}

template <typename F>
sg_status guarded(F&& body) {
  try {
    body();
    return SG_OK;
  } catch (const segame::Error& e) {
    t_last_error = e.what();
    return map_errc(e.code);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return SG_ERR_INTERNAL;
  }
}

sg_status require(bool ok, const char* what) {
  if (ok) return SG_OK;
  t_last_error = what;
  return SG_ERR_INVALID_ARGUMENT;
}

segame::Constraint constraint_of(const sg_game* game, const char* bits) {
  if (!bits)
    segame::fail(segame::Errc::invalid_argument, "constraint is null");
  segame::Constraint v;
  for (const char* c = bits; *c; ++c) {
    if (*c != '0' && *c != '1')
      segame::fail(segame::Errc::invalid_argument,
                   "constraint must be a bit string");
    v.bits.push_back(*c - '0');
  }
  v.check(game->g.arena.player_count());
  return v;
}

segame::State state_of(const sg_game* game, const char* id) {
  if (!id) segame::fail(segame::Errc::invalid_argument, "state id is null");
  return game->g.arena.index_of(id);
}

std::vector<segame::Player> coalition_of(const unsigned* coalition,
                                         size_t len) {
  if (!coalition && len)
    segame::fail(segame::Errc::invalid_argument, "coalition is null");
  return {coalition, coalition + len};
}

char* dup_text(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

size_t* dup_indices(const std::vector<segame::State>& xs) {
  auto* out = static_cast<size_t*>(
      std::malloc(sizeof(size_t) * (xs.empty() ? 1 : xs.size())));
  if (out)
    for (size_t k = 0; k < xs.size(); ++k) out[k] = xs[k];
  return out;
}

} // namespace

extern "C" {

const char* sg_last_error(void) { return t_last_error.c_str(); }

const char* sg_status_name(sg_status s) {
  switch (s) {
    case SG_OK: return "ok";
    case SG_ERR_DUPLICATE_STATE: return "duplicate-state";
    case SG_ERR_UNKNOWN_OWNER: return "unknown-owner";
    case SG_ERR_PLAYER_OUT_OF_RANGE: return "player-out-of-range";
    case SG_ERR_DANGLING_EDGE: return "dangling-edge";
    case SG_ERR_DEAD_END_STATE: return "dead-end-state";
    case SG_ERR_UNKNOWN_STATE: return "unknown-state";
    case SG_ERR_FOREIGN_STATE: return "foreign-state";
    case SG_ERR_EMPTY_ARENA: return "empty-arena";
    case SG_ERR_BAD_OBJECTIVE: return "bad-objective";
    case SG_ERR_SHAPE_MISMATCH: return "shape-mismatch";
    case SG_ERR_MEMORY_BUDGET: return "memory-budget-exceeded";
    case SG_ERR_BUDGET: return "budget-exceeded";
    case SG_ERR_PARSE: return "parse-error";
    case SG_ERR_INVALID_LASSO: return "invalid-lasso";
    case SG_ERR_INVALID_PROFILE: return "invalid-profile";
    case SG_ERR_NO_WITNESS: return "no-witness";
    case SG_ERR_IO: return "io-error";
    case SG_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SG_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

void sg_set_solver_budget(size_t budget) {
  segame::set_solver_budget(budget);
}

sg_status sg_game_parse_file(const char* path, sg_game** out) {
  if (sg_status s = require(path && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] { *out = new sg_game{segame::parse_game_file(path)}; });
}

sg_status sg_game_parse_text(const char* text, sg_game** out) {
  if (sg_status s = require(text && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] { *out = new sg_game{segame::parse_game_text(text)}; });
}

void sg_game_free(sg_game* game) { delete game; }

size_t sg_game_state_count(const sg_game* game) {
  return game ? game->g.arena.size() : 0;
}

unsigned sg_game_player_count(const sg_game* game) {
  return game ? game->g.arena.player_count() : 0;
}

const char* sg_game_state_id(const sg_game* game, size_t index) {
  if (!game || index >= game->g.arena.size()) return nullptr;
  return game->g.arena.id_of(index).c_str();
}

sg_status sg_game_state_index(const sg_game* game, const char* id,
                              size_t* out) {
  if (sg_status s = require(game && id && out, "null argument")) return s;
  return guarded([&] { *out = game->g.arena.index_of(id); });
}

unsigned sg_game_state_owner(const sg_game* game, size_t index) {
  if (!game || index >= game->g.arena.size()) return 0;
  return game->g.arena.owner(index);
}

sg_status sg_region_coalition(const sg_game* game, const unsigned* coalition,
                              size_t coalition_len, const char* objective,
                              sg_region** out) {
  if (sg_status s = require(game && objective && out, "null argument"))
    return s;
  *out = nullptr;
  return guarded([&] {
    auto expr = segame::parse_player_expr(objective, game->g.objectives);
    auto region = segame::coalition_region(
        game->g.arena, coalition_of(coalition, coalition_len), expr);
    *out = new sg_region{std::move(region)};
  });
}

sg_status sg_region_a(const sg_game* game, const char* constraint,
                      sg_region** out) {
  if (sg_status s = require(game && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    auto region = segame::compute_a_v(game->g.arena, game->g.objectives,
                                      constraint_of(game, constraint));
    *out = new sg_region{std::move(region)};
  });
}

sg_status sg_region_se(const sg_game* game, const char* constraint,
                       sg_region** out) {
  if (sg_status s = require(game && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    auto region = segame::compute_se_v(game->g.arena, game->g.objectives,
                                       constraint_of(game, constraint));
    *out = new sg_region{std::move(region)};
  });
}

void sg_region_free(sg_region* region) { delete region; }

size_t sg_region_universe(const sg_region* region) {
  return region ? region->r.states.universe() : 0;
}

int sg_region_contains(const sg_region* region, size_t state_index) {
  if (!region || state_index >= region->r.states.universe()) return 0;
  return region->r.states.test(state_index) ? 1 : 0;
}

const char* sg_region_provenance(const sg_region* region) {
  return region ? region->r.provenance.c_str() : "";
}

sg_status sg_decide_se(const sg_game* game, const char* state_id,
                       const char* constraint, int* yes) {
  if (sg_status s = require(game && yes, "null argument")) return s;
  return guarded([&] {
    *yes = segame::decide_constrained_se(game->g.arena, game->g.objectives,
                                         state_of(game, state_id),
                                         constraint_of(game, constraint))
               ? 1
               : 0;
  });
}

sg_status sg_witness_build(const sg_game* game, const char* state_id,
                           const char* constraint, sg_witness** out) {
  if (sg_status s = require(game && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    auto profile = segame::build_witness(game->g.arena, game->g.objectives,
                                         state_of(game, state_id),
                                         constraint_of(game, constraint));
    *out = new sg_witness{std::move(profile)};
  });
}

sg_status sg_witness_parse_file(const sg_game* game, const char* path,
                                sg_witness** out) {
  if (sg_status s = require(game && path && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new sg_witness{segame::parse_witness_file(path, game->g.arena)};
  });
}

sg_status sg_witness_parse_text(const sg_game* game, const char* text,
                                sg_witness** out) {
  if (sg_status s = require(game && text && out, "null argument")) return s;
  *out = nullptr;
  return guarded([&] {
    *out = new sg_witness{segame::parse_witness_text(text, game->g.arena)};
  });
}

sg_status sg_witness_serialize(const sg_game* game, const sg_witness* witness,
                               char** out_text) {
  if (sg_status s = require(game && witness && out_text, "null argument"))
    return s;
  *out_text = nullptr;
  return guarded([&] {
    *out_text = dup_text(segame::serialize_witness(game->g.arena, witness->p));
    if (!*out_text)
      segame::fail(segame::Errc::io_error, "out of memory");
  });
}

sg_status sg_witness_write_file(const sg_game* game, const sg_witness* witness,
                                const char* path) {
  if (sg_status s = require(game && witness && path, "null argument"))
    return s;
  return guarded(
      [&] { segame::write_witness_file(path, game->g.arena, witness->p); });
}

void sg_witness_free(sg_witness* witness) { delete witness; }

size_t sg_witness_memory_count(const sg_witness* witness, unsigned player) {
  if (!witness || player < 1 || player > witness->p.players.size()) return 0;
  return witness->p.players[player - 1].memory_count;
}

sg_status sg_witness_outcome(const sg_game* game, const sg_witness* witness,
                             const char* state_id, size_t** stem,
                             size_t* stem_len, size_t** cycle,
                             size_t* cycle_len) {
  if (sg_status s = require(game && witness && stem && stem_len && cycle &&
                                cycle_len,
                            "null argument"))
    return s;
  *stem = nullptr;
  *cycle = nullptr;
  *stem_len = 0;
  *cycle_len = 0;
  return guarded([&] {
    segame::Lasso l = segame::outcome(game->g.arena, witness->p,
                                      state_of(game, state_id));
    *stem = dup_indices(l.stem);
    *cycle = dup_indices(l.cycle);
    if (!*stem || !*cycle) {
      std::free(*stem);
      std::free(*cycle);
      *stem = nullptr;
      *cycle = nullptr;
      segame::fail(segame::Errc::io_error, "out of memory");
    }
    *stem_len = l.stem.size();
    *cycle_len = l.cycle.size();
  });
}

sg_status sg_verify(const sg_game* game, const sg_witness* witness,
                    const char* state_id, int* secure, unsigned* deviator,
                    char** achievable) {
  if (sg_status s = require(game && witness && secure, "null argument"))
    return s;
  if (achievable) *achievable = nullptr;
  return guarded([&] {
    auto report = segame::verify_se(game->g.arena, game->g.objectives,
                                    witness->p, state_of(game, state_id));
    *secure = report ? 0 : 1;
    if (report) {
      if (deviator) *deviator = report->player;
      if (achievable) {
        std::string bits;
        for (int b : report->achievable.bits) bits.push_back(b ? '1' : '0');
        *achievable = dup_text(bits);
        if (!*achievable)
          segame::fail(segame::Errc::io_error, "out of memory");
      }
    }
  });
}

sg_status sg_oracle_bounded_se(const sg_game* game, const char* state_id,
                               const char* constraint, size_t memory_bound,
                               int* found, sg_witness** witness_out) {
  if (sg_status s = require(game && found, "null argument")) return s;
  *found = 0;
  if (witness_out) *witness_out = nullptr;
  return guarded([&] {
    auto hit = segame::enumerate_bounded_se(
        game->g.arena, game->g.objectives, state_of(game, state_id),
        constraint_of(game, constraint), memory_bound);
    *found = hit ? 1 : 0;
    if (witness_out) *witness_out = hit ? new sg_witness{std::move(*hit)} : nullptr;
  });
}

sg_status sg_oracle_region(const sg_game* game, const unsigned* coalition,
                           size_t coalition_len, const char* objective,
                           size_t memory_bound, sg_region** out) {
  if (sg_status s = require(game && objective && out, "null argument"))
    return s;
  *out = nullptr;
  return guarded([&] {
    auto expr = segame::parse_player_expr(objective, game->g.objectives);
    auto region = segame::brute_region(game->g.arena,
                                       coalition_of(coalition, coalition_len),
                                       expr, memory_bound);
    *out = new sg_region{std::move(region)};
  });
}

void sg_text_free(char* text) { std::free(text); }
void sg_indices_free(size_t* indices) { std::free(indices); }

} // extern "C"
