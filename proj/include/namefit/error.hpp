#pragma once

#include <stdexcept>
#include <string>

namespace namefit {

// Bad or inconsistent input data (schema, missing tags, domain violations on
// user-supplied vectors). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine could not produce a result (non-convergence, a
// statistic that is undefined for the supplied cells). Exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace namefit
