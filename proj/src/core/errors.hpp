#pragma once

#include <stdexcept>
#include <string>

namespace sqha {

/// Contract violation on inputs (bad grid, negative amplitude, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A run was aborted because the numerics went bad (norm blow-up,
/// too many amplitude clamps per step, degenerate denominators).
class NumericalAbort : public std::runtime_error {
public:
    explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

/// File / serialization problems.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Config parsing / validation problems.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sqha
