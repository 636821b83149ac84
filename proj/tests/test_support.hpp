#pragma once

#include <functional>
#include <optional>

#include "filt/error.hpp"

namespace filt_test {

// Runs f and reports the library error code it threw, if any.
inline std::optional<filt::errc> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const filt::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace filt_test
