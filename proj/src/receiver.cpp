#include "uwofdm/receiver.hpp"

#include <algorithm>
#include <cmath>

#include "uwofdm/errors.hpp"
#include "uwofdm/rng.hpp"

namespace uwofdm {

ReceiverOperator build_receiver(const GeneratorMatrices& gen, const ChannelTaps& taps, double sigma2_n,
                                double sigma2_d, const CVec& uw_spectrum, const SystemConfig& config) {
    validate(config);
    if (sigma2_n <= 0.0) {
        throw ValidationError(
            "build_receiver: sigma2_n must be positive (the smoother's regularizer vanishes at zero; "
            "pass a small noise floor such as 1e-12 for noiseless studies)");
    }
    if (sigma2_d <= 0.0) throw ValidationError("build_receiver: sigma2_d must be positive");
    if (uw_spectrum.size() != config.n_total) {
        throw ValidationError("build_receiver: uw_spectrum must have length n_total");
    }

    ReceiverOperator rx;
    rx.h_used = freq_response(taps, config);

    const std::vector<std::size_t> used = used_carrier_indices(config);
    const CMatrix f = dft_matrix(config.n_total);
    rx.analysis = CMatrix(used.size(), config.n_total);
    for (std::size_t u = 0; u < used.size(); ++u)
        for (std::size_t t = 0; t < config.n_total; ++t) rx.analysis(u, t) = f(used[u], t);

    rx.uw_freq_used.resize(used.size());
    for (std::size_t u = 0; u < used.size(); ++u) rx.uw_freq_used[u] = uw_spectrum[used[u]];

    // smoother = G^H (G G^H + reg * (H^H H)^{-1})^{-1}, evaluated through the
    // push-through identity as (G^H H^H H G + reg I)^{-1} G^H H^H H. The
    // rewritten system keeps its smallest eigenvalue at min|h|^2 instead of
    // reg, so a 1e-12 noise floor costs no precision.
    const CMatrix& g = gen.precoder;
    CMatrix weighted = hermitian(g); // G^H H^H H
    for (std::size_t r = 0; r < weighted.rows; ++r) {
        for (std::size_t u = 0; u < used.size(); ++u) weighted(r, u) *= std::norm(rx.h_used[u]);
    }
    CMatrix inner = matmul(weighted, g);
    const double reg = static_cast<double>(config.n_total) * sigma2_n / sigma2_d;
    for (std::size_t i = 0; i < inner.rows; ++i) inner(i, i) += reg;
    CMatrix inner_inv;
    try {
        inner_inv = invert(inner);
    } catch (const NumericalError&) {
        throw NumericalError("build_receiver: smoother system singular; increase the noise floor");
    }
    rx.smoother = matmul(inner_inv, weighted);
    return rx;
}

CVec decode(const CVec& received, const ReceiverOperator& rx, const SystemConfig& config) {
    if (received.size() != config.n_total) throw ValidationError("decode: received block length mismatch");
    CVec y = matvec(rx.analysis, received);
    for (std::size_t u = 0; u < y.size(); ++u) {
        if (std::abs(rx.h_used[u]) < 1e-12) {
            throw NumericalError("decode: near-zero channel response at a used carrier");
        }
        y[u] = (y[u] - rx.h_used[u] * rx.uw_freq_used[u]) / rx.h_used[u];
    }
    return matvec(rx.smoother, y);
}

CpOfdmParams CpOfdmParams::ieee80211a_like(double sigma2_d) {
    CpOfdmParams p;
    p.sigma2_d = sigma2_d;
    p.pilot_bins = {7, 21, 43, 57};
    for (std::size_t bin = 1; bin <= 26; ++bin) {
        if (!std::binary_search(p.pilot_bins.begin(), p.pilot_bins.end(), bin)) p.data_bins.push_back(bin);
    }
    for (std::size_t bin = 38; bin <= 63; ++bin) {
        if (!std::binary_search(p.pilot_bins.begin(), p.pilot_bins.end(), bin)) p.data_bins.push_back(bin);
    }
    return p;
}

double CpOfdmParams::mean_symbol_energy() const {
    const double n = static_cast<double>(n_total);
    const double window = static_cast<double>(data_bins.size() + pilot_bins.size()) * sigma2_d / n;
    return window * (n + static_cast<double>(cp_len)) / n;
}

double CpOfdmParams::data_energy() const {
    return static_cast<double>(data_bins.size()) * sigma2_d / static_cast<double>(n_total);
}

std::vector<std::uint8_t> cp_ofdm_reference(const std::vector<std::uint8_t>& bits, const ChannelTaps& taps,
                                            const NoiseModel& noise, const CpOfdmParams& params,
                                            const Constellation& c) {
    const std::size_t bits_per_symbol = params.bits_per_symbol(c);
    if (bits_per_symbol == 0 || bits.size() % bits_per_symbol != 0) {
        throw ValidationError("cp_ofdm_reference: bit count must fill whole symbols");
    }
    if (taps.taps.size() > params.cp_len + 1) {
        throw ValidationError("cp_ofdm_reference: channel longer than the cyclic prefix");
    }

    const std::size_t n = params.n_total;
    const std::size_t cp = params.cp_len;
    const double pilot_value = std::sqrt(params.sigma2_d);

    const CVec h_all = freq_response_all(taps, n);
    for (std::size_t bin : params.data_bins) {
        if (std::abs(h_all[bin]) < 1e-12) {
            throw NumericalError("cp_ofdm_reference: data carrier " + std::to_string(bin) +
                                 " sits in a spectral null");
        }
    }

    const std::size_t n_symbols = bits.size() / bits_per_symbol;
    std::vector<std::uint8_t> decoded;
    decoded.reserve(bits.size());

    for (std::size_t s = 0; s < n_symbols; ++s) {
        const std::vector<std::uint8_t> chunk(bits.begin() + s * bits_per_symbol,
                                              bits.begin() + (s + 1) * bits_per_symbol);
        const CVec data_syms = map_bits(chunk, c);

        CVec spectrum(n, cplx{});
        for (std::size_t i = 0; i < params.data_bins.size(); ++i) spectrum[params.data_bins[i]] = data_syms[i];
        for (std::size_t bin : params.pilot_bins) spectrum[bin] = pilot_value;

        const CVec time = idft_apply(spectrum);
        CVec block(cp + n);
        for (std::size_t i = 0; i < cp; ++i) block[i] = time[n - cp + i];
        for (std::size_t i = 0; i < n; ++i) block[cp + i] = time[i];

        // Linear convolution of the prefixed block; keep the DFT window. With
        // the channel inside the prefix this window equals the cyclic
        // convolution of the bare symbol.
        CVec window(n, cplx{});
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (std::size_t l = 0; l < taps.taps.size(); ++l) acc += taps.taps[l] * block[cp + i - l];
            window[i] = acc;
        }
        if (noise.sigma2_n > 0.0) {
            Rng rng(derive_seed(noise.seed, s + 1));
            for (cplx& v : window) v += rng.cgaussian(noise.sigma2_n);
        }

        const CVec rx_spectrum = dft_apply(window);
        CVec equalized(params.data_bins.size());
        for (std::size_t i = 0; i < params.data_bins.size(); ++i) {
            equalized[i] = rx_spectrum[params.data_bins[i]] / h_all[params.data_bins[i]];
        }
        const std::vector<std::uint8_t> out_bits = demap(equalized, c);
        decoded.insert(decoded.end(), out_bits.begin(), out_bits.end());
    }
    return decoded;
}

} // namespace uwofdm
