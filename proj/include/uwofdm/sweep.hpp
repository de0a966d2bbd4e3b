#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/energy.hpp"
#include "uwofdm/sequence.hpp"

namespace uwofdm {

// What counts as Eb. all_energy charges every transmitted joule (data,
// redundant carriers, UW, prefix, pilots) per information bit; that is the
// accounting under which the two generation methods separate by their energy
// ratio. data_only strips the overhead, which turns the CP reference into
// plain QPSK with BER Q(sqrt(2 Eb/N0)).
enum class EbAccounting { all_energy, data_only };

struct SweepSpec {
    std::vector<double> ebn0_db;       // nonempty, ascending
    std::vector<Approach> approaches;  // nonempty
    std::vector<SequenceSpec> uw_specs;
    ChannelTaps taps;
    std::size_t min_bit_errors = 1000;
    std::uint64_t max_bits = 10'000'000;
    std::uint64_t seed = 1;
    unsigned qam_order = 4;
    EbAccounting accounting = EbAccounting::all_energy;
    std::size_t symbols_per_chunk = 64; // trial granularity; part of the result's identity
};

struct BerPoint {
    double ebn0_db = 0.0;
    double ber = 0.0;
    std::uint64_t bits_simulated = 0;
    std::uint64_t bit_errors = 0;
    Approach approach = Approach::two_step;
    std::string uw_label;

    bool operator==(const BerPoint&) const = default;
};

struct Wilson {
    double lo = 0.0;
    double hi = 0.0;
};
Wilson wilson_interval(std::uint64_t errors, std::uint64_t bits, double z = 1.96);

// sigma2_n for a target Eb/N0: Eb = e_total / (n_data * bits_per_symbol),
// N0 = Eb * 10^(-ebn0_db/10), and the complex per-sample noise variance is
// N0 itself.
double calibrate_noise(const SystemConfig& config, const EnergyBreakdown& energy, double ebn0_db,
                       unsigned bits_per_symbol);

// Monte Carlo BER sweep over approaches x unique words x Eb/N0. Trials run
// in fixed-size chunks seeded from (seed, point, chunk); a point stops after
// the first chunk that pushes it past min_bit_errors or max_bits. run_sweep
// executes chunks with OpenMP; run_sweep_serial is the plain reference. Both
// produce bit-identical results for the same spec, independent of the worker
// count. One log line per finished point when log is given.
std::vector<BerPoint> run_sweep(const SweepSpec& spec, const SystemConfig& config, std::ostream* log = nullptr);
std::vector<BerPoint> run_sweep_serial(const SweepSpec& spec, const SystemConfig& config, std::ostream* log = nullptr);

// Header ebn0_db,approach,uw_label,bits,errors,ber; LF endings, decimal dot.
void emit_csv(const std::vector<BerPoint>& points, const std::string& path);

} // namespace uwofdm
