#pragma once

#include <stdexcept>
#include <string>

namespace quditcolor {

// Bad or inconsistent user-supplied configuration (unknown graph, missing
// preset, mismatched vector lengths, unparseable config file).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested Hilbert-space dimension or enumeration size exceeds a bound.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quditcolor
