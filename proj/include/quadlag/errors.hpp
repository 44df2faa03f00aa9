#pragma once

#include <stdexcept>
#include <string>

namespace quadlag {

// Malformed input text or schema violations.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameters outside an operation's stated range.
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A matrix or lattice that was required to have full rank does not.
struct RankDeficient : std::domain_error {
  using std::domain_error::domain_error;
};

struct InconsistentSystem : std::domain_error {
  using std::domain_error::domain_error;
};

// The sublattice argument of an index computation is not contained in the
// superlattice.
struct NotContained : std::domain_error {
  using std::domain_error::domain_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input lies outside what a model is able to reason about.
struct OutOfModel : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quadlag
