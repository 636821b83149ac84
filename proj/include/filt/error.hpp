#pragma once

#include <stdexcept>
#include <string>

namespace filt {

// Error categories surfaced by the library. The CLI maps any Error to exit
// code 2; verify-suite violations use exit code 1.
enum class errc {
  non_monotone,
  missing_simplex,
  duplicate_simplex,
  duplicate_vertex,
  unknown_simplex,
  invalid_simplex,
  not_surjective,
  cap_exceeds_space,
  insufficient_cap,
  not_prime,
  invalid_matching,
  too_large,
  enumeration_bound_exceeded,
  not_a_correspondence,
  cap_too_low_for_exact,
  empty_composite,
  not_minimizing,
  out_of_range,
  metric_violation,
  syntax_error,
  schema_violation,
  unknown_suite,
  invalid_spec,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace filt
