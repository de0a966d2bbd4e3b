#pragma once

#include <cstdint>
#include <string>

#include "uwofdm/config.hpp"
#include "uwofdm/linalg.hpp"

namespace uwofdm {

// Impulse response of the per-symbol cyclic channel.
struct ChannelTaps {
    CVec taps{cplx{1.0, 0.0}};
    std::string label = "identity";
};

struct NoiseModel {
    double sigma2_n = 0.0;  // complex noise variance per time sample
    std::uint64_t seed = 0;
};

ChannelTaps identity_channel();

// One tap per line, "re im", '#' comments.
ChannelTaps load_taps(const std::string& path);

// Circulant matrix whose first column is the zero-padded tap vector.
CMatrix cyclic_matrix(const ChannelTaps& taps, std::size_t n_total);

// y[n] = sum_l taps[l] * x[(n - l) mod N]
CVec cyclic_convolve(const CVec& x, const CVec& taps);

// DFT of the zero-padded taps: the diagonal that the DFT pair turns the
// circulant matrix into.
CVec freq_response_all(const ChannelTaps& taps, std::size_t n_total);

// Response sampled at the used carriers, ascending bin order. Throws
// NumericalError when any used carrier's response magnitude is below 1e-12
// (zero-forcing would blow up there).
CVec freq_response(const ChannelTaps& taps, const SystemConfig& config);

// r = H x + n with independent circular complex Gaussian noise, variance
// sigma2_n per sample. Deterministic for a fixed seed.
CVec transmit(const CVec& time_signal, const ChannelTaps& taps, const NoiseModel& noise);

} // namespace uwofdm
