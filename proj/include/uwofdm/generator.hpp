#pragma once

#include <cstddef>
#include <vector>

#include "uwofdm/config.hpp"
#include "uwofdm/linalg.hpp"
#include "uwofdm/sequence.hpp"

namespace uwofdm {

// Blocks of the carrier-to-time map idft * zero_insertion * placement,
// split after n_total - n_uw rows and n_data columns. The right column block
// feeds the redundant carriers; its lower square block maps them onto the
// symbol tail and is invertible for sane redundant-carrier placements.
struct PartitionedGenerator {
    CMatrix payload_from_data;      // (n - n_uw) x n_data
    CMatrix payload_from_redundant; // (n - n_uw) x n_red
    CMatrix tail_from_data;         // n_uw x n_data
    CMatrix tail_from_redundant;    // n_uw x n_red, square
};

PartitionedGenerator partition_generator(const SystemConfig& config);

// 0/1 matrix inserting zero rows at the zero-carrier bins: maps the
// used-carrier vector (ascending bin order) to all n_total bins.
CMatrix zero_insertion_matrix(const SystemConfig& config);

// 0/1 permutation placing the stacked [data; redundant] values onto the
// used carriers: data value i goes to the i-th data bin, redundant value k
// to the k-th redundant bin.
CMatrix placement_matrix(const SystemConfig& config);

struct GeneratorMatrices {
    CMatrix zero_insertion;          // B
    CMatrix placement;               // stacked-to-used permutation
    CMatrix tail_from_data;          // lower left partition block
    CMatrix tail_from_redundant;     // lower right partition block
    CMatrix tail_from_redundant_inv;
    CMatrix redundancy;              // data symbols -> redundant carrier symbols
    CMatrix precoder;                // data symbols -> used-carrier vector, placement * [I; redundancy]
    std::vector<std::size_t> data_bins;
    std::vector<std::size_t> redundant_bins;
    std::size_t n_total = 0;
};

// Partitions the carrier-to-time map and solves for the redundancy matrix.
// Throws NumericalError when the tail block is singular (degenerate
// redundant-carrier placement).
GeneratorMatrices build_generator(const SystemConfig& config);

// One transmit symbol. freq is the spectrum of the transmitted time signal;
// for the two-step construction that includes the UW added in time domain.
struct SymbolFrames {
    CVec freq;              // length n_total
    CVec time;              // length n_total
    CVec data_symbols;      // length n_data
    CVec redundant_symbols; // length n_red
};

// Generates a zero tail through the redundant carriers, then adds the UW in
// time domain. When strict, a nonzero pre-addition tail (beyond 1e-10)
// raises NumericalError.
SymbolFrames generate_two_step(const GeneratorMatrices& gen, const CVec& data, const UniqueWord& uw,
                               bool strict = true);

// Loads the redundant carriers so the IDFT output tail is the UW itself.
SymbolFrames generate_direct(const GeneratorMatrices& gen, const CVec& data, const UniqueWord& uw);

// Spectral contribution of the UW to the transmitted symbol, length n_total.
// Two-step: the DFT of the time-domain extension [0; uw]. Direct: the
// redundant-carrier loading tail_from_redundant_inv * uw scattered onto the
// redundant bins (zero on all data and zero carriers).
CVec uw_spectrum_two_step(const UniqueWord& uw, std::size_t n_total);
CVec uw_spectrum_direct(const GeneratorMatrices& gen, const UniqueWord& uw);

} // namespace uwofdm
