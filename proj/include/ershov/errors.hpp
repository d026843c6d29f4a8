#pragma once

#include <stdexcept>

namespace ershov {

/// Malformed or inconsistent configuration (CLI exit 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario cannot run on the given parameters (CLI exit 3).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ershov
