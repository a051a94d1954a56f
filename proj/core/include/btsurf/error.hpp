#ifndef BTSURF_ERROR_HPP_
#define BTSURF_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace btsurf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* Malformed input: unparsable files, wrong dimensions, out-of-range indices. */
struct InputError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

/* A mathematical check did not hold. `kind` names the check and `witness`
 * is a machine-readable description of the offending object (a simplex,
 * a word, a lattice pair). */
struct CheckFailure : Error {
  CheckFailure(std::string kind_, std::string witness_, const std::string& msg)
      : Error(msg), kind(std::move(kind_)), witness(std::move(witness_)) {}
  std::string kind;
  std::string witness;
};

}  // namespace btsurf

#endif  // BTSURF_ERROR_HPP_
