#pragma once

// Error taxonomy shared by all modules. Operations whose "failure" is an
// ordinary value (a missing square root, a prime with no representation
// tried speculatively) return std::optional instead; these exceptions are
// for contract violations and corrupted state.

#include <stdexcept>
#include <string>

namespace cubicspin {

struct NotOneModThree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// p admits no representation a^2 + D b^2, i.e. p does not split as a
// principal ideal of the order of discriminant -4D.
struct NonSplit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotCoprimeToThree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadModulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadReduction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadCongruence : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CacheCorrupt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cubicspin
