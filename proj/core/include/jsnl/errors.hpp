#pragma once

#include <stdexcept>
#include <string>

namespace jsnl {

enum class Errc {
  odd_point_count,
  tiny_grid,
  nonpositive_length,
  incommensurate_shift,
  grid_mismatch,
  non_positive_density,
  degenerate_weight,
  index_out_of_range,
  grid_too_large,
  non_finite,
  unknown_key,
  missing_key,
  type_error,
  bad_argument,
  io_error,
};

const char* errc_name(Errc code);

/// All library failures are reported through this type; code() maps back to
/// the condition so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::odd_point_count: return "OddPointCount";
    case Errc::tiny_grid: return "TinyGrid";
    case Errc::nonpositive_length: return "NonpositiveLength";
    case Errc::incommensurate_shift: return "IncommensurateShift";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::non_positive_density: return "NonPositiveDensity";
    case Errc::degenerate_weight: return "DegenerateWeight";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::grid_too_large: return "GridTooLarge";
    case Errc::non_finite: return "NonFinite";
    case Errc::unknown_key: return "UnknownKey";
    case Errc::missing_key: return "MissingKey";
    case Errc::type_error: return "TypeError";
    case Errc::bad_argument: return "BadArgument";
    case Errc::io_error: return "IoError";
  }
  return "Error";
}

}  // namespace jsnl
