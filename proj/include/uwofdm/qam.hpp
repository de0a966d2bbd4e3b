#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwofdm/linalg.hpp"

namespace uwofdm {

// Gray-labelled square QAM with zero mean and average energy sigma2_d.
// points[label] is the symbol for that bit label, MSB first.
struct Constellation {
    unsigned order = 4;
    unsigned bits_per_symbol = 2;
    double sigma2_d = 1.0;
    std::vector<cplx> points;
    std::string name = "qpsk";
};

// order 4 (QPSK) or 16.
Constellation make_constellation(unsigned order, double sigma2_d);

// Bit count must be a multiple of bits_per_symbol.
CVec map_bits(const std::vector<std::uint8_t>& bits, const Constellation& c);

// Minimum-distance hard decision; ties break toward the lowest label.
std::vector<std::uint8_t> demap(const CVec& symbols, const Constellation& c);

} // namespace uwofdm
