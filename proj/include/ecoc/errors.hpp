#pragma once

#include <stdexcept>
#include <string>

namespace ecoc {

// Requested size/parameter is outside the range an algorithm supports.
struct UnsupportedSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Code-design parameters admit no solution (e.g. BCH dimension <= 0).
struct InfeasibleDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Optimizer produced a non-finite loss.
struct TrainingDivergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; message names the offending row/column.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ecoc
