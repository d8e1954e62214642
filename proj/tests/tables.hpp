#pragma once

// Reference code matrices used across the test suites.

#include <string>
#include <vector>

#include "ecoc/code_matrix.hpp"

namespace ecoc::testing {

// 15-bit error-correcting code for a ten-class problem; minimum row
// distance 7, so nearest-codeword decoding corrects any 3 bit errors.
inline CodeMatrix ten_class_15bit_code() {
    const std::vector<std::string> rows = {
        "110000101001101",
        "001111010110010",
        "100100011110101",
        "001101110000101",
        "111010110010001",
        "010011011100001",
        "101110000101001",
        "000111101011001",
        "110101100100011",
        "011100001010011",
    };
    std::vector<BitVec> bits;
    for (const auto& r : rows) bits.push_back(BitVec::from_string(r));
    return CodeMatrix(std::move(bits));
}

// Six-bit "meaningful" code for digit recognition (columns: vertical line,
// horizontal line, diagonal line, closed curve, curve open left/right).
// Rows 0 and 8 are identical and rows 4/5 sit at distance one; the loader
// must accept it and validation must flag it.
inline CodeMatrix digit_meaningful_code() {
    const std::vector<std::string> rows = {
        "000100", "100000", "011010", "000010", "110000",
        "110010", "001101", "001000", "000100", "001100",
    };
    std::vector<BitVec> bits;
    for (const auto& r : rows) bits.push_back(BitVec::from_string(r));
    return CodeMatrix(std::move(bits));
}

// Exhaustive code for five classes: 15 columns, all row pairs at distance 8.
inline CodeMatrix five_class_exhaustive_reference() {
    const std::vector<std::string> rows = {
        "111111111111111",
        "000000001111111",
        "000011110000111",
        "001100110011001",
        "010101010101010",
    };
    std::vector<BitVec> bits;
    for (const auto& r : rows) bits.push_back(BitVec::from_string(r));
    return CodeMatrix(std::move(bits));
}

} // namespace ecoc::testing
