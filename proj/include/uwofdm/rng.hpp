#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace uwofdm {

// splitmix64 finalizer. Used both as a hash and as the stream function of Rng.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Independent stream seed from a base seed plus up to two indices. Trial
// chunks seeded this way are reproducible no matter which worker runs them.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(seed) ^ a) ^ b);
}

// Small deterministic generator (splitmix64 stream). Identical output on any
// platform, cheap to construct per chunk, one instance per worker.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 significant bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    unsigned bit() {
        if (bits_left_ == 0) {
            bit_buffer_ = next_u64();
            bits_left_ = 64;
        }
        unsigned b = static_cast<unsigned>(bit_buffer_ & 1u);
        bit_buffer_ >>= 1;
        --bits_left_;
        return b;
    }

    // Standard normal, Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    // Circular complex Gaussian with E{|z|^2} == variance.
    std::complex<double> cgaussian(double variance) {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-variance * std::log(u1));
        return std::polar(r, 2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
    std::uint64_t bit_buffer_ = 0;
    unsigned bits_left_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace uwofdm
