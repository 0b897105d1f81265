#pragma once

#include <stdexcept>
#include <string>

namespace lpqb {

// Base class for all toolkit errors. Messages carry the originating
// operation, e.g. "load_csv: missing column 'price'".
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data violates a documented contract: missing values, bad dates,
// count mismatches, partial days.
struct DataError : Error {
  using Error::Error;
};

// Numerical failure: singular system, factorization failure after the
// jitter ladder, ill-conditioned cross-moment matrix.
struct NumericError : Error {
  using Error::Error;
};

// Invalid configuration: unknown key, out-of-range value, missing file.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace lpqb
