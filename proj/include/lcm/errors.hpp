#pragma once

#include <stdexcept>
#include <string>

namespace lcm {

// Error taxonomy shared by the library and the CLI exit codes:
//   precondition / parse  -> 2
//   numeric non-convergence -> 3
//   inequality violation   -> 4
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

// Quadrature refinement failed to settle; carries the last two refinements.
struct NumericError : Error {
  NumericError(const std::string& what, double coarse, double fine)
      : Error(what + " (refinements " + std::to_string(coarse) + " vs " +
              std::to_string(fine) + ")"),
        last_coarse(coarse),
        last_fine(fine) {}
  double last_coarse;
  double last_fine;
};

// A checked inequality failed; carries the witness point.
struct InequalityViolation : Error {
  InequalityViolation(const std::string& what, double witness_arg)
      : Error(what + " (witness at " + std::to_string(witness_arg) + ")"),
        witness(witness_arg) {}
  double witness;
};

// A limit classification that is neither converging nor cleanly diverging.
struct InconclusiveError : Error {
  using Error::Error;
};

}  // namespace lcm
