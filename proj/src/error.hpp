#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

enum class ErrorCode {
  singular_point = 1,
  dimension_mismatch,
  not_unimodular,
  unknown_algorithm,
  unsupported_dimension,
  out_of_domain,
  boundary_point,
  empty_cylinder,
  non_full_system,
  divergent_integral,
  no_known_intertwiner,
  search_space_exhausted,
  bad_digit_string,
  invalid_argument,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

const char* error_name(ErrorCode code);

}  // namespace mcf
