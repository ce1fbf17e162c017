#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framelab {

enum class ErrorKind {
  invalid_spec,
  invalid_argument,
  empty_matrix,
  dimension_mismatch,
  index_out_of_range,
  division_by_zero,
  oracle_dimension_exceeded,
  truncation_of_dense,
  lower_bound_violation,
  singular_frame_operator,
  not_surjective,
  unknown_example,
  parse_error,
  file_not_found,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::empty_matrix: return "empty-matrix";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::division_by_zero: return "division-by-zero";
    case ErrorKind::oracle_dimension_exceeded: return "oracle-dimension-exceeded";
    case ErrorKind::truncation_of_dense: return "truncation-of-dense";
    case ErrorKind::lower_bound_violation: return "lower-bound-violation";
    case ErrorKind::singular_frame_operator: return "singular-frame-operator";
    case ErrorKind::not_surjective: return "not-surjective";
    case ErrorKind::unknown_example: return "unknown-example";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::file_not_found: return "file-not-found";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace framelab
