#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace uwofdm {

// One system parameterization. Carrier indices are DFT bins 0..n_total-1
// (DC at bin 0, negative frequencies in the upper half). An index not listed
// as zero or redundant is a data carrier.
struct SystemConfig {
    std::size_t n_total = 0; // DFT length
    std::size_t n_uw = 0;    // unique word length in samples
    std::size_t n_red = 0;   // redundant carrier count, must equal n_uw
    std::size_t n_data = 0;  // data carrier count
    std::vector<std::size_t> zero_carrier_indices;      // ascending, no duplicates
    std::vector<std::size_t> redundant_carrier_indices; // ascending, disjoint from zeros
    double sigma2_d = 1.0;           // data symbol variance
    double sigma2_n = 0.0;           // complex noise variance per time sample
    double uw_energy_fraction = 0.0; // UW share of total symbol energy, in [0, 1)
};

// 64-carrier layout borrowed from the 802.11a numerology: 12 zero carriers
// (DC plus band-edge bins 27..37), 16 redundant carriers spread as evenly as
// possible over the 52 used carriers, UW budgeted at 4/52 of the symbol
// energy.
SystemConfig default_80211a_like();

// Throws ValidationError naming the violated invariant. Pure.
void validate(const SystemConfig& config);

std::vector<std::size_t> used_carrier_indices(const SystemConfig& config); // non-zero bins, ascending
std::vector<std::size_t> data_carrier_indices(const SystemConfig& config); // used minus redundant

// Flat "key = value" text, one key per line, '#' starts a comment. Index
// sets are comma separated integers. Unknown, repeated or missing keys are
// errors. The result is validated before it is returned.
SystemConfig load_config(const std::string& path);

} // namespace uwofdm
