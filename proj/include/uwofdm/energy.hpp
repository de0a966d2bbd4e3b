#pragma once

#include <cstdint>
#include <string>

#include "uwofdm/config.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/sequence.hpp"

namespace uwofdm {

enum class Approach { two_step, direct, cp_reference };

const char* approach_name(Approach a);
Approach parse_approach(const std::string& text);

// Mean symbol energy split into data, redundant-carrier and UW generation
// parts. For the direct construction e_u exceeds the UW's own energy; that
// surplus is the excess field (zero for two-step).
struct EnergyBreakdown {
    double e_d = 0.0;
    double e_r = 0.0;
    double e_u = 0.0;
    double e_total = 0.0;
    double excess = 0.0;
    Approach approach = Approach::two_step;
};

// e_d = n_data * sigma2_d / n, e_r = sigma2_d / n * tr(R R^H) with R the
// redundancy matrix, e_u = ||uw||^2.
EnergyBreakdown energy_two_step(const GeneratorMatrices& gen, const SystemConfig& config, const UniqueWord& uw);

// Same e_d and e_r; e_u = (1/n) ||inv(tail_from_redundant) uw||^2, which is
// never below ||uw||^2.
EnergyBreakdown energy_direct(const GeneratorMatrices& gen, const SystemConfig& config, const UniqueWord& uw);

// 10 * log10(e_a / e_b). Both inputs must be positive.
double db_shift(double e_a, double e_b);

struct InequalityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double min_ratio = 0.0;  // generation energy over UW energy, per draw
    double mean_ratio = 0.0;
    double max_ratio = 0.0;
};

// Draws random complex Gaussian unique words and checks that the direct
// generation energy is never below the UW energy (tolerance 1e-12 relative).
// Throws NumericalError with the offending word when a draw violates it.
InequalityReport verify_inequality(const GeneratorMatrices& gen, std::size_t trials, std::uint64_t seed);

} // namespace uwofdm
