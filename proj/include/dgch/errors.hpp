#pragma once

#include <stdexcept>
#include <string>

namespace dgch {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed configuration files, region/grid mismatches.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside the set where it is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace dgch
