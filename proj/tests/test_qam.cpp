#include <doctest.h>

#include <bit>
#include <cmath>

#include "uwofdm/errors.hpp"
#include "uwofdm/qam.hpp"
#include "uwofdm/rng.hpp"

using namespace uwofdm;

TEST_SUITE("qam") {

TEST_CASE("qpsk mapping table") {
    const Constellation c = make_constellation(4, 1.0);
    const double a = 1.0 / std::sqrt(2.0);
    const CVec s = map_bits({0, 0, 0, 1, 1, 0, 1, 1}, c);
    CHECK(std::abs(s[0] - cplx(a, a)) < 1e-15);
    CHECK(std::abs(s[1] - cplx(a, -a)) < 1e-15);
    CHECK(std::abs(s[2] - cplx(-a, a)) < 1e-15);
    CHECK(std::abs(s[3] - cplx(-a, -a)) < 1e-15);

    cplx mean = 0.0;
    for (const cplx& p : c.points) mean += p;
    CHECK(std::abs(mean) < 1e-15);
    for (const cplx& p : c.points) CHECK(std::norm(p) == doctest::Approx(1.0));
}

TEST_CASE("16qam constellation statistics and gray labels") {
    const double sigma2 = 2.0;
    const Constellation c = make_constellation(16, sigma2);
    cplx mean = 0.0;
    double energy = 0.0;
    for (const cplx& p : c.points) {
        mean += p;
        energy += std::norm(p);
    }
    CHECK(std::abs(mean) < 1e-14);
    CHECK(energy / 16.0 == doctest::Approx(sigma2).epsilon(1e-12));

    // nearest neighbours differ in exactly one bit
    double dmin = 1e9;
    for (unsigned i = 0; i < 16; ++i)
        for (unsigned j = i + 1; j < 16; ++j) dmin = std::min(dmin, std::abs(c.points[i] - c.points[j]));
    for (unsigned i = 0; i < 16; ++i) {
        for (unsigned j = i + 1; j < 16; ++j) {
            if (std::abs(c.points[i] - c.points[j]) < dmin * 1.001) {
                CHECK(std::popcount(i ^ j) == 1);
            }
        }
    }
}

TEST_CASE("mapping rejects ragged input and odd orders") {
    const Constellation c = make_constellation(4, 1.0);
    CHECK_THROWS_AS(map_bits({0, 1, 0}, c), ValidationError);
    CHECK_THROWS_AS(make_constellation(8, 1.0), ValidationError);
}

TEST_CASE("sample statistics over random bits") {
    const Constellation c = make_constellation(4, 1.0);
    Rng rng(3);
    std::vector<std::uint8_t> bits(200000);
    for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    const CVec s = map_bits(bits, c);
    cplx mean = 0.0;
    double energy = 0.0;
    for (const cplx& v : s) {
        mean += v;
        energy += std::norm(v);
    }
    mean /= static_cast<double>(s.size());
    energy /= static_cast<double>(s.size());
    CHECK(std::abs(mean) < 0.02);
    CHECK(energy > 0.98);
    CHECK(energy < 1.02);
}

TEST_CASE("hard decisions") {
    const Constellation c = make_constellation(4, 1.0);
    CHECK(demap({c.points[0], c.points[1], c.points[2], c.points[3]}, c) ==
          std::vector<std::uint8_t>{0, 0, 0, 1, 1, 0, 1, 1});
    CHECK(demap({cplx(0.9, 0.8)}, c) == std::vector<std::uint8_t>{0, 0});
    // equidistant symbol: lowest label wins
    CHECK(demap({cplx(0.0, 0.0)}, c) == std::vector<std::uint8_t>{0, 0});
}

TEST_CASE("map then demap is the identity without noise") {
    for (unsigned order : {4u, 16u}) {
        const Constellation c = make_constellation(order, 1.7);
        Rng rng(order);
        std::vector<std::uint8_t> bits(c.bits_per_symbol * 500);
        for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        CHECK(demap(map_bits(bits, c), c) == bits);
    }
}

} // TEST_SUITE
