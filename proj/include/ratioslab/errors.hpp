#pragma once

#include <stdexcept>

namespace ratioslab {

// Error taxonomy, mirrored by the CLI exit codes:
//   argument_error -> 2  (bad usage, out-of-domain parameter)
//   numeric_error  -> 3  (violated numeric contract: pole hit, quadrature
//                         non-convergence, consistency check failed,
//                         near-singular denominator)
//   resource_error -> 4  (exhausted budget: sieve size, cache I/O)
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ratioslab
