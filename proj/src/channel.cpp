#include "uwofdm/channel.hpp"

#include <cmath>

#include "uwofdm/errors.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/sequence.hpp"

namespace uwofdm {

ChannelTaps identity_channel() { return ChannelTaps{}; }

ChannelTaps load_taps(const std::string& path) {
    ChannelTaps t;
    t.taps = read_complex_lines(path);
    if (t.taps.empty()) throw ValidationError(path + ": tap file holds no taps");
    const std::size_t slash = path.find_last_of("/\\");
    t.label = (slash == std::string::npos) ? path : path.substr(slash + 1);
    return t;
}

CMatrix cyclic_matrix(const ChannelTaps& taps, std::size_t n_total) {
    if (taps.taps.empty()) throw ValidationError("cyclic_matrix: empty tap vector");
    if (taps.taps.size() > n_total) throw ValidationError("cyclic_matrix: more taps than the symbol length");
    CVec first_col(n_total, cplx{});
    for (std::size_t l = 0; l < taps.taps.size(); ++l) first_col[l] = taps.taps[l];
    CMatrix h(n_total, n_total);
    for (std::size_t i = 0; i < n_total; ++i)
        for (std::size_t j = 0; j < n_total; ++j) h(i, j) = first_col[(i + n_total - j) % n_total];
    return h;
}

CVec cyclic_convolve(const CVec& x, const CVec& taps) {
    const std::size_t n = x.size();
    if (taps.empty()) throw ValidationError("cyclic_convolve: empty tap vector");
    if (taps.size() > n) throw ValidationError("cyclic_convolve: more taps than samples");
    CVec y(n, cplx{});
    for (std::size_t l = 0; l < taps.size(); ++l) {
        const cplx t = taps[l];
        if (t == cplx{}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += t * x[(i + n - l) % n];
        }
    }
    return y;
}

CVec freq_response_all(const ChannelTaps& taps, std::size_t n_total) {
    if (taps.taps.size() > n_total) throw ValidationError("freq_response_all: more taps than the symbol length");
    CVec padded(n_total, cplx{});
    for (std::size_t l = 0; l < taps.taps.size(); ++l) padded[l] = taps.taps[l];
    return dft_apply(padded);
}

CVec freq_response(const ChannelTaps& taps, const SystemConfig& config) {
    validate(config);
    const CVec all = freq_response_all(taps, config.n_total);
    CVec used;
    for (std::size_t bin : used_carrier_indices(config)) {
        if (std::abs(all[bin]) < 1e-12) {
            throw NumericalError("freq_response: used carrier " + std::to_string(bin) +
                                 " sits in a spectral null of the channel");
        }
        used.push_back(all[bin]);
    }
    return used;
}

CVec transmit(const CVec& time_signal, const ChannelTaps& taps, const NoiseModel& noise) {
    if (noise.sigma2_n < 0.0) throw ValidationError("transmit: sigma2_n must be >= 0");
    CVec y = cyclic_convolve(time_signal, taps.taps);
    if (noise.sigma2_n > 0.0) {
        Rng rng(noise.seed);
        for (cplx& s : y) s += rng.cgaussian(noise.sigma2_n);
    }
    return y;
}

} // namespace uwofdm
