#include "uwofdm/qam.hpp"

#include <cmath>

#include "uwofdm/errors.hpp"

namespace uwofdm {

namespace {

// Per-axis Gray code for the 16-QAM levels -3, -1, +1, +3.
constexpr double kGrayLevels16[4] = {-3.0, -1.0, +1.0, +3.0};
constexpr unsigned kGrayLabels16[4] = {0b00, 0b01, 0b11, 0b10};

} // namespace

Constellation make_constellation(unsigned order, double sigma2_d) {
    if (sigma2_d < 0.0) throw ValidationError("make_constellation: sigma2_d must be >= 0");
    Constellation c;
    c.order = order;
    c.sigma2_d = sigma2_d;
    if (order == 4) {
        c.bits_per_symbol = 2;
        c.name = "qpsk";
        const double a = std::sqrt(sigma2_d / 2.0);
        c.points.resize(4);
        for (unsigned b0 = 0; b0 < 2; ++b0) {
            for (unsigned b1 = 0; b1 < 2; ++b1) {
                c.points[(b0 << 1) | b1] = cplx(a * (1.0 - 2.0 * b0), a * (1.0 - 2.0 * b1));
            }
        }
    } else if (order == 16) {
        c.bits_per_symbol = 4;
        c.name = "qam16";
        const double a = std::sqrt(sigma2_d / 10.0);
        c.points.resize(16);
        for (unsigned i = 0; i < 4; ++i) {
            for (unsigned q = 0; q < 4; ++q) {
                const unsigned label = (kGrayLabels16[i] << 2) | kGrayLabels16[q];
                c.points[label] = cplx(a * kGrayLevels16[i], a * kGrayLevels16[q]);
            }
        }
    } else {
        throw ValidationError("make_constellation: order must be 4 or 16");
    }
    return c;
}

CVec map_bits(const std::vector<std::uint8_t>& bits, const Constellation& c) {
    if (bits.size() % c.bits_per_symbol != 0) {
        throw ValidationError("map_bits: bit count not a multiple of bits per symbol");
    }
    CVec out(bits.size() / c.bits_per_symbol);
    std::size_t pos = 0;
    for (cplx& s : out) {
        unsigned label = 0;
        for (unsigned b = 0; b < c.bits_per_symbol; ++b) label = (label << 1) | (bits[pos++] & 1u);
        s = c.points[label];
    }
    return out;
}

std::vector<std::uint8_t> demap(const CVec& symbols, const Constellation& c) {
    std::vector<std::uint8_t> bits;
    bits.reserve(symbols.size() * c.bits_per_symbol);
    for (const cplx& s : symbols) {
        unsigned best = 0;
        double best_d = std::norm(s - c.points[0]);
        for (unsigned label = 1; label < c.order; ++label) {
            const double d = std::norm(s - c.points[label]);
            if (d < best_d) {
                best_d = d;
                best = label;
            }
        }
        for (unsigned b = c.bits_per_symbol; b-- > 0;) bits.push_back((best >> b) & 1u);
    }
    return bits;
}

} // namespace uwofdm
