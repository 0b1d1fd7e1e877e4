#pragma once

#include <stdexcept>
#include <string>

namespace wsnsim {

// Base for everything thrown by the library. The C API maps these to
// wsnsim_status codes; the CLI maps them to process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration value or malformed/unknown config key.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's domain (negative bits, distance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Operation called in an invalid state (empty alive set, stale cache, ...).
class StateError : public Error {
public:
    using Error::Error;
};

// File read/write failure; message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

// Training diverged (NaN/Inf loss); message carries the epoch.
class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace wsnsim
