/* C interface of the secure-equilibrium game solver.
 *
 * Every object is an opaque handle owned by the caller and released with
 * the matching _free function. Calls report success through sg_status;
 * on failure sg_last_error() returns a thread-local description of what
 * went wrong and every out parameter is left null (or zero). All functions
 * are safe to call from multiple threads as long as no handle is used
 * concurrently.
 */
#ifndef SEGAME_H
#define SEGAME_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_DUPLICATE_STATE,
  SG_ERR_UNKNOWN_OWNER,
  SG_ERR_PLAYER_OUT_OF_RANGE,
  SG_ERR_DANGLING_EDGE,
  SG_ERR_DEAD_END_STATE,
  SG_ERR_UNKNOWN_STATE,
  SG_ERR_FOREIGN_STATE,
  SG_ERR_EMPTY_ARENA,
  SG_ERR_BAD_OBJECTIVE,
  SG_ERR_SHAPE_MISMATCH,
  SG_ERR_MEMORY_BUDGET,
  SG_ERR_BUDGET,
  SG_ERR_PARSE,
  SG_ERR_INVALID_LASSO,
  SG_ERR_INVALID_PROFILE,
  SG_ERR_NO_WITNESS,
  SG_ERR_IO,
  SG_ERR_INVALID_ARGUMENT,
  SG_ERR_INTERNAL
} sg_status;

/* Arena plus one objective per player, as loaded from a game file. */
typedef struct sg_game sg_game;
/* A computed set of states with a provenance tag. */
typedef struct sg_region sg_region;
/* A strategy profile (one finite-memory strategy per player). */
typedef struct sg_witness sg_witness;

/* Message describing the most recent failure on this thread. */
const char* sg_last_error(void);
const char* sg_status_name(sg_status s);

/* Cap on solver product/record/search sizes (default one million). */
void sg_set_solver_budget(size_t budget);

/* -- Games ------------------------------------------------------------- */

sg_status sg_game_parse_file(const char* path, sg_game** out);
sg_status sg_game_parse_text(const char* text, sg_game** out);
void sg_game_free(sg_game* game);

size_t sg_game_state_count(const sg_game* game);
unsigned sg_game_player_count(const sg_game* game);
/* NULL when index is out of range. */
const char* sg_game_state_id(const sg_game* game, size_t index);
sg_status sg_game_state_index(const sg_game* game, const char* id,
                              size_t* out);
/* 0 when index is out of range. */
unsigned sg_game_state_owner(const sg_game* game, size_t index);

/* -- Regions ----------------------------------------------------------- */

/* States from which `coalition` (player numbers) can force the objective
 * expression (atoms p1..pn name the players' objectives, combined with
 * !, &, | and parentheses). */
sg_status sg_region_coalition(const sg_game* game, const unsigned* coalition,
                              size_t coalition_len, const char* objective,
                              sg_region** out);
/* Step-1 region A_v for the constraint bit string ("110", player 1 first). */
sg_status sg_region_a(const sg_game* game, const char* constraint,
                      sg_region** out);
/* Step-2 region SE_v: states admitting a secure equilibrium with payoff
 * exactly the constraint. */
sg_status sg_region_se(const sg_game* game, const char* constraint,
                       sg_region** out);

void sg_region_free(sg_region* region);
size_t sg_region_universe(const sg_region* region);
int sg_region_contains(const sg_region* region, size_t state_index);
const char* sg_region_provenance(const sg_region* region);

/* -- Decision and witnesses -------------------------------------------- */

sg_status sg_decide_se(const sg_game* game, const char* state_id,
                       const char* constraint, int* yes);

/* Builds a secure-equilibrium strategy profile; SG_ERR_NO_WITNESS when the
 * decision at the state is negative. */
sg_status sg_witness_build(const sg_game* game, const char* state_id,
                           const char* constraint, sg_witness** out);
sg_status sg_witness_parse_file(const sg_game* game, const char* path,
                                sg_witness** out);
sg_status sg_witness_parse_text(const sg_game* game, const char* text,
                                sg_witness** out);
/* Serialized witness; release with sg_text_free. */
sg_status sg_witness_serialize(const sg_game* game, const sg_witness* witness,
                               char** out_text);
sg_status sg_witness_write_file(const sg_game* game, const sg_witness* witness,
                                const char* path);
void sg_witness_free(sg_witness* witness);
/* Memory elements of one player's machine; 0 when the player is unknown. */
size_t sg_witness_memory_count(const sg_witness* witness, unsigned player);

/* The play everyone following the witness produces from the state, as a
 * stem and cycle of state indices. Release both with sg_indices_free. */
sg_status sg_witness_outcome(const sg_game* game, const sg_witness* witness,
                             const char* state_id, size_t** stem,
                             size_t* stem_len, size_t** cycle,
                             size_t* cycle_len);

/* -- Verification and brute-force oracle -------------------------------- */

/* secure=1 when no player can deviate to a payoff it prefers; otherwise
 * secure=0 with the deviating player and the payoff it can reach written
 * to the out parameters (bit string, release with sg_text_free). */
sg_status sg_verify(const sg_game* game, const sg_witness* witness,
                    const char* state_id, int* secure, unsigned* deviator,
                    char** achievable);

/* Exhaustive search over look-back-bounded profiles; found=1 and a witness
 * when one both hits the constraint payoff and verifies secure. */
sg_status sg_oracle_bounded_se(const sg_game* game, const char* state_id,
                               const char* constraint, size_t memory_bound,
                               int* found, sg_witness** witness_out);

/* Brute-force coalition region over the same strategy class. */
sg_status sg_oracle_region(const sg_game* game, const unsigned* coalition,
                           size_t coalition_len, const char* objective,
                           size_t memory_bound, sg_region** out);

void sg_text_free(char* text);
void sg_indices_free(size_t* indices);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEGAME_H */
