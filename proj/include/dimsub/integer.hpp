#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dimsub {

using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline long to_long(const Integer& v) {
  if (!v.fits_slong_p()) throw Error("integer does not fit in a machine word");
  return v.get_si();
}

}  // namespace dimsub
