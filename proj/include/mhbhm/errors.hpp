#pragma once

#include <stdexcept>
#include <string>

namespace mhbhm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, specs, or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Missing, malformed, or mutually inconsistent inputs (files, catalogs, labels).
class DataError : public Error {
public:
    using Error::Error;
};

/// Numerical failures: factorization breakdown, degenerate likelihood means.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace mhbhm
