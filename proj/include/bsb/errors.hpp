#pragma once

#include <stdexcept>
#include <string>

namespace bsb {

// Bad experiment configuration or argument (CLI exit code 1).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CLI exit code 2).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural guarantee was violated, e.g. greedy routing stalled (exit code 3).
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace bsb
