#ifndef EWAGG_ERRORS_HPP
#define EWAGG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ewagg {

// Bad run configuration (N = 0, dimension mismatch with the run, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad per-round input (wrong count, wrong dimension, non-finite value).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates a documented invariant (e.g. weights
// off the simplex beyond tolerance).
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed stream file or run log. Carries a 1-based line number when known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line_number(line) {}
  long line_number;
};

}  // namespace ewagg

#endif
