#pragma once

#include <stdexcept>
#include <string>

namespace uwofdm {

// Invalid configuration, malformed input file, bad argument.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Computation cannot proceed (singular matrix, consistency check tripped).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be opened, read or written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace uwofdm
