#pragma once

#include <cstdint>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/qam.hpp"

namespace uwofdm {

// Everything the four-step decoder needs, precomputed once per (channel,
// noise level, UW) and shared read-only by the trial workers.
struct ReceiverOperator {
    CMatrix smoother;   // n_data x n_used, LMMSE matrix applied after zero forcing
    CVec h_used;        // channel response on the used carriers
    CVec uw_freq_used;  // UW spectral contribution on the used carriers
    CMatrix analysis;   // used-carrier DFT rows, applied to the received block
};

// smoother = G^H (G G^H + (n * sigma2_n / sigma2_d) (H^H H)^{-1})^{-1} with
// G the precoder and H the diagonal used-carrier response. sigma2_n must be
// positive: at zero the regularizer vanishes and G G^H is rank deficient, so
// callers should pass a small floor (1e-12 works) for noiseless studies.
ReceiverOperator build_receiver(const GeneratorMatrices& gen, const ChannelTaps& taps, double sigma2_n,
                                double sigma2_d, const CVec& uw_spectrum, const SystemConfig& config);

// Four steps: used-carrier DFT, UW subtraction, per-carrier zero forcing,
// smoothing. Returns the data symbol estimates, length n_data. The UW
// spectrum baked into rx must match the generation method of the symbol.
CVec decode(const CVec& received, const ReceiverOperator& rx, const SystemConfig& config);

// Uncoded CP-OFDM reference: 48 data carriers, 4 idle pilots carrying fixed
// known symbols, 16-sample cyclic prefix.
struct CpOfdmParams {
    std::size_t n_total = 64;
    std::size_t cp_len = 16;
    std::vector<std::size_t> data_bins;
    std::vector<std::size_t> pilot_bins;
    double sigma2_d = 1.0;

    static CpOfdmParams ieee80211a_like(double sigma2_d = 1.0);

    std::size_t bits_per_symbol(const Constellation& c) const { return data_bins.size() * c.bits_per_symbol; }
    // Mean transmitted energy per symbol including the prefix and pilots.
    double mean_symbol_energy() const;
    // Data-carrier energy inside the DFT window only (no prefix, no pilots).
    double data_energy() const;
};

// map -> insert pilots and zeros -> IDFT -> prefix -> channel -> drop prefix
// -> DFT -> per-carrier zero forcing -> demap. Requires the tap count to fit
// inside the prefix. Bit count must fill whole symbols.
std::vector<std::uint8_t> cp_ofdm_reference(const std::vector<std::uint8_t>& bits, const ChannelTaps& taps,
                                            const NoiseModel& noise, const CpOfdmParams& params,
                                            const Constellation& c);

} // namespace uwofdm
