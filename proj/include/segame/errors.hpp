#pragma once

#include <stdexcept>
#include <string>

namespace segame {

// Every failure the library can report. Values are stable: the C API
// exposes them verbatim as status codes (offset by sg_status).
enum class Errc {
  ok = 0,
  duplicate_state,
  unknown_owner,
  player_out_of_range,
  dangling_edge,
  dead_end_state,
  unknown_state,
  foreign_state,
  empty_arena,
  bad_objective,
  shape_mismatch,
  memory_budget_exceeded,
  budget_exceeded,
  parse_error,
  invalid_lasso,
  invalid_profile,
  no_witness,
  io_error,
  invalid_argument,
};

const char* errc_name(Errc c) noexcept;

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& what)
      : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& what) {
  throw Error(c, what);
}

} // namespace segame
