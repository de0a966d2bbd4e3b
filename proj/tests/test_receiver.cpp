#include <doctest.h>

#include <cmath>

#include "uwofdm/energy.hpp"
#include "uwofdm/errors.hpp"
#include "uwofdm/receiver.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/sequence.hpp"

using namespace uwofdm;

namespace {

CVec random_qpsk(Rng& rng, std::size_t n, const Constellation& c) {
    std::vector<std::uint8_t> bits(c.bits_per_symbol * n);
    for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return map_bits(bits, c);
}

UniqueWord random_uw(Rng& rng, std::size_t n) {
    UniqueWord uw{CVec(n), "random"};
    for (cplx& s : uw.samples) s = rng.cgaussian(1.0);
    return uw;
}

// Random multipath channel whose used-carrier response stays comfortably
// away from zero. Deterministic: walks seeds from the given start.
ChannelTaps random_invertible_channel(const SystemConfig& config, std::uint64_t seed_start) {
    for (std::uint64_t seed = seed_start;; ++seed) {
        Rng rng(derive_seed(seed, 99));
        ChannelTaps taps;
        taps.label = "mp";
        taps.taps.resize(6);
        for (cplx& v : taps.taps) v = rng.cgaussian(1.0 / 6.0);
        try {
            const CVec h = freq_response(taps, config);
            double mn = 1e30;
            for (const cplx& v : h) mn = std::min(mn, std::abs(v));
            if (mn > 0.25) return taps;
        } catch (const NumericalError&) {
        }
    }
}

double recovery_error(const SystemConfig& config, const GeneratorMatrices& gen, const ChannelTaps& taps,
                      Approach approach, const UniqueWord& uw, std::uint64_t seed) {
    const Constellation c = make_constellation(4, config.sigma2_d);
    Rng rng(seed);
    const CVec d = random_qpsk(rng, config.n_data, c);
    const SymbolFrames frames =
        (approach == Approach::two_step) ? generate_two_step(gen, d, uw) : generate_direct(gen, d, uw);
    const CVec spectrum = (approach == Approach::two_step) ? uw_spectrum_two_step(uw, config.n_total)
                                                           : uw_spectrum_direct(gen, uw);
    const ReceiverOperator rx = build_receiver(gen, taps, 1e-12, config.sigma2_d, spectrum, config);
    const CVec received = transmit(frames.time, taps, NoiseModel{0.0, 0});
    const CVec estimate = decode(received, rx, config);
    double err = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) err = std::max(err, std::abs(estimate[i] - d[i]));
    return err;
}

} // namespace

TEST_SUITE("receiver") {

TEST_CASE("smoother approaches the left inverse of the precoder at a tiny noise floor") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const CVec no_uw(config.n_total, cplx{});
    const ReceiverOperator rx = build_receiver(gen, identity_channel(), 1e-12, 1.0, no_uw, config);
    const CMatrix wg = matmul(rx.smoother, gen.precoder);
    double err = 0.0;
    for (std::size_t i = 0; i < config.n_data; ++i)
        for (std::size_t j = 0; j < config.n_data; ++j)
            err = std::max(err, std::abs(wg(i, j) - ((i == j) ? cplx(1.0, 0.0) : cplx{})));
    CHECK(err < 1e-5);
}

TEST_CASE("smoother attenuates as the noise grows") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const CVec no_uw(config.n_total, cplx{});
    const ReceiverOperator low = build_receiver(gen, identity_channel(), 0.1, 1.0, no_uw, config);
    const ReceiverOperator high = build_receiver(gen, identity_channel(), 10.0, 1.0, no_uw, config);
    CHECK(frobenius(high.smoother) < frobenius(low.smoother));
}

TEST_CASE("orthonormal precoder limit") {
    const SystemConfig config = default_80211a_like();
    GeneratorMatrices gen = build_generator(config);
    // overwrite the precoder with orthonormal columns [I; 0]
    gen.precoder = CMatrix(config.n_data + config.n_red, config.n_data);
    for (std::size_t i = 0; i < config.n_data; ++i) gen.precoder(i, i) = 1.0;
    const CVec no_uw(config.n_total, cplx{});
    const ReceiverOperator rx = build_receiver(gen, identity_channel(), 1e-12, 1.0, no_uw, config);
    const CMatrix gh = hermitian(gen.precoder);
    double err = 0.0;
    for (std::size_t i = 0; i < gh.a.size(); ++i) err = std::max(err, std::abs(rx.smoother.a[i] - gh.a[i]));
    CHECK(err < 1e-5);
}

TEST_CASE("zero noise is rejected with advice") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const CVec no_uw(config.n_total, cplx{});
    CHECK_THROWS_WITH_AS(build_receiver(gen, identity_channel(), 0.0, 1.0, no_uw, config),
                         doctest::Contains("noise floor"), ValidationError);
}

TEST_CASE("noiseless loopback on the identity channel") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    Rng rng(41);
    const UniqueWord uw = random_uw(rng, config.n_uw);
    CHECK(recovery_error(config, gen, identity_channel(), Approach::two_step, uw, 1) < 1e-5);
    CHECK(recovery_error(config, gen, identity_channel(), Approach::direct, uw, 2) < 1e-5);
}

TEST_CASE("zero input decodes to zero") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const CVec no_uw(config.n_total, cplx{});
    const ReceiverOperator rx = build_receiver(gen, identity_channel(), 1e-3, 1.0, no_uw, config);
    const CVec out = decode(CVec(config.n_total, cplx{}), rx, config);
    CHECK(norm2sq(out) == 0.0);
}

TEST_CASE("loopback across random invertible channels") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const ChannelTaps taps = random_invertible_channel(config, 1000 + trial * 10);
        const UniqueWord uw = random_uw(rng, config.n_uw);
        CHECK(recovery_error(config, gen, taps, Approach::two_step, uw, 100 + trial) < 1e-5);
        CHECK(recovery_error(config, gen, taps, Approach::direct, uw, 200 + trial) < 1e-5);
    }
}

TEST_CASE("mismatched UW spectrum leaves a systematic bias") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const Constellation c = make_constellation(4, 1.0);
    const UniqueWord uw = zadoff_chu(config.n_uw, 1);
    const double sigma2_n = 1e-6;

    const ReceiverOperator paired =
        build_receiver(gen, identity_channel(), sigma2_n, 1.0, uw_spectrum_direct(gen, uw), config);
    const ReceiverOperator mismatched =
        build_receiver(gen, identity_channel(), sigma2_n, 1.0, uw_spectrum_two_step(uw, config.n_total), config);

    Rng rng(47);
    double mse_paired = 0.0;
    double mse_mismatched = 0.0;
    for (int s = 0; s < 50; ++s) {
        const CVec d = random_qpsk(rng, config.n_data, c);
        const SymbolFrames frames = generate_direct(gen, d, uw);
        const CVec received = transmit(frames.time, identity_channel(), NoiseModel{sigma2_n, rng.next_u64()});
        const CVec est_a = decode(received, paired, config);
        const CVec est_b = decode(received, mismatched, config);
        for (std::size_t i = 0; i < d.size(); ++i) {
            mse_paired += std::norm(est_a[i] - d[i]);
            mse_mismatched += std::norm(est_b[i] - d[i]);
        }
    }
    CHECK(mse_mismatched > 10.0 * mse_paired);
}

TEST_CASE("decode is linear in the received block") {
    const SystemConfig config = default_80211a_like();
    const GeneratorMatrices gen = build_generator(config);
    const CVec no_uw(config.n_total, cplx{});
    const ReceiverOperator rx = build_receiver(gen, identity_channel(), 1e-3, 1.0, no_uw, config);
    Rng rng(53);
    CVec r1(config.n_total), r2(config.n_total), sum(config.n_total);
    for (std::size_t i = 0; i < config.n_total; ++i) {
        r1[i] = rng.cgaussian(1.0);
        r2[i] = rng.cgaussian(1.0);
        sum[i] = r1[i] + r2[i];
    }
    const CVec a = decode(r1, rx, config);
    const CVec b = decode(r2, rx, config);
    const CVec s = decode(sum, rx, config);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(s[i] - (a[i] + b[i])) < 1e-10);
}

TEST_CASE("cp reference is bit exact without noise") {
    const CpOfdmParams params = CpOfdmParams::ieee80211a_like();
    const Constellation c = make_constellation(4, 1.0);
    Rng rng(59);
    std::vector<std::uint8_t> bits(params.bits_per_symbol(c) * 20);
    for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());

    CHECK(cp_ofdm_reference(bits, identity_channel(), NoiseModel{0.0, 0}, params, c) == bits);

    ChannelTaps multipath;
    multipath.taps = {cplx(0.8, 0.0), cplx(0.3, 0.2), cplx(0.1, -0.1)};
    multipath.label = "mp3";
    CHECK(cp_ofdm_reference(bits, multipath, NoiseModel{0.0, 0}, params, c) == bits);
}

TEST_CASE("cp reference matches the closed-form tail probability") {
    const CpOfdmParams params = CpOfdmParams::ieee80211a_like();
    const Constellation c = make_constellation(4, 1.0);
    // noise for a 4 dB information-bit SNR, no overhead charged
    const double ratio = std::pow(10.0, 0.4);
    const double sigma2_n = params.sigma2_d / (2.0 * ratio * static_cast<double>(params.n_total));
    const double expected = 0.5 * std::erfc(std::sqrt(2.0 * ratio) / std::sqrt(2.0));

    Rng rng(61);
    const std::size_t symbols = 1400;
    std::vector<std::uint8_t> bits(params.bits_per_symbol(c) * symbols);
    for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    const std::vector<std::uint8_t> out = cp_ofdm_reference(bits, identity_channel(), NoiseModel{sigma2_n, 4242},
                                                            params, c);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) errors += (bits[i] != out[i]);
    const double ber = static_cast<double>(errors) / static_cast<double>(bits.size());
    REQUIRE(errors > 1000);
    CHECK(std::abs(ber - expected) < 0.10 * expected);
}

TEST_CASE("cp reference determinism and channel length guard") {
    const CpOfdmParams params = CpOfdmParams::ieee80211a_like();
    const Constellation c = make_constellation(4, 1.0);
    std::vector<std::uint8_t> bits(params.bits_per_symbol(c) * 4, 1);
    const NoiseModel nm{0.01, 7};
    CHECK(cp_ofdm_reference(bits, identity_channel(), nm, params, c) ==
          cp_ofdm_reference(bits, identity_channel(), nm, params, c));

    ChannelTaps too_long;
    too_long.taps.assign(params.cp_len + 2, cplx(0.1, 0.0));
    CHECK_THROWS_AS(cp_ofdm_reference(bits, too_long, nm, params, c), ValidationError);
}

} // TEST_SUITE
