#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "uwofdm/errors.hpp"
#include "uwofdm/sequence.hpp"

using namespace uwofdm;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

// Brute-force cyclic autocorrelation at a given lag.
cplx cyclic_autocorr(const CVec& s, std::size_t lag) {
    cplx acc = 0.0;
    const std::size_t n = s.size();
    for (std::size_t k = 0; k < n; ++k) acc += s[(k + lag) % n] * std::conj(s[k]);
    return acc;
}

} // namespace

TEST_SUITE("sequence") {

TEST_CASE("zadoff-chu basics") {
    const UniqueWord uw = zadoff_chu(16, 1);
    REQUIRE(uw.samples.size() == 16);
    CHECK(std::abs(uw.samples[0] - cplx(1.0, 0.0)) < 1e-15);
    for (const cplx& s : uw.samples) CHECK(std::abs(std::abs(s) - 1.0) < 1e-15);
}

TEST_CASE("zadoff-chu flat cyclic autocorrelation") {
    for (std::size_t root : {std::size_t{1}, std::size_t{5}}) {
        const UniqueWord uw = zadoff_chu(16, root);
        for (std::size_t lag = 1; lag < 16; ++lag) CHECK(std::abs(cyclic_autocorr(uw.samples, lag)) < 1e-10);
    }
    // odd length exercises the k(k+1) phase rule
    const UniqueWord odd = zadoff_chu(15, 2);
    for (std::size_t lag = 1; lag < 15; ++lag) CHECK(std::abs(cyclic_autocorr(odd.samples, lag)) < 1e-10);
}

TEST_CASE("zadoff-chu argument checks") {
    CHECK_THROWS_AS(zadoff_chu(16, 0), ValidationError);
    CHECK_THROWS_AS(zadoff_chu(16, 16), ValidationError);
    CHECK_THROWS_WITH_AS(zadoff_chu(16, 2), doctest::Contains("coprime"), ValidationError);
    CHECK_THROWS_AS(zadoff_chu(0, 1), ValidationError);
}

TEST_CASE("sequence file loading pads with zeros") {
    std::string text = "# twelve entries\n";
    for (int i = 0; i < 12; ++i) text += "0.5 -0.25\n";
    const UniqueWord uw = load_sequence(write_temp("uwofdm_seq12.txt", text), 16);
    REQUIRE(uw.samples.size() == 16);
    for (std::size_t i = 0; i < 12; ++i) CHECK(uw.samples[i] == cplx(0.5, -0.25));
    for (std::size_t i = 12; i < 16; ++i) CHECK(uw.samples[i] == cplx{});
}

TEST_CASE("sequence file edge cases") {
    const UniqueWord empty = load_sequence(write_temp("uwofdm_seq0.txt", "# nothing here\n\n"), 16);
    CHECK(norm2sq(empty.samples) == 0.0);
    CHECK(empty.samples.size() == 16);

    std::string too_many;
    for (int i = 0; i < 17; ++i) too_many += "1 0\n";
    CHECK_THROWS_WITH_AS(load_sequence(write_temp("uwofdm_seq17.txt", too_many), 16), doctest::Contains("exceed"),
                         ValidationError);

    CHECK_THROWS_WITH_AS(load_sequence(write_temp("uwofdm_seq_bad.txt", "1 0\n0.5\n"), 16),
                         doctest::Contains("line 2"), ValidationError);
    CHECK_THROWS_WITH_AS(load_sequence(write_temp("uwofdm_seq_extra.txt", "1 0 9\n"), 16),
                         doctest::Contains("line 1"), ValidationError);
    CHECK_THROWS_AS(load_sequence("/nonexistent/seq.txt", 16), IoError);
}

TEST_CASE("scaling hits the requested energy share") {
    SystemConfig config = default_80211a_like(); // fraction 4/52
    UniqueWord uw = zadoff_chu(16, 1);
    const UniqueWord scaled = scale_to_fraction(uw, config, 1.2);
    CHECK(norm2sq(scaled.samples) == doctest::Approx(0.1).epsilon(1e-12));
    // total energy check: uw energy is exactly the fraction of the grand total
    const double total = 1.2 + norm2sq(scaled.samples);
    CHECK(norm2sq(scaled.samples) / total == doctest::Approx(4.0 / 52.0).epsilon(1e-12));

    // direction preserved: scaled = alpha * uw with one positive real alpha
    const double alpha = std::sqrt(norm2sq(scaled.samples) / norm2sq(uw.samples));
    for (std::size_t i = 0; i < uw.samples.size(); ++i) {
        CHECK(std::abs(scaled.samples[i] - alpha * uw.samples[i]) < 1e-14);
    }
}

TEST_CASE("scaling corner cases") {
    SystemConfig config = default_80211a_like();
    config.uw_energy_fraction = 0.0;
    const UniqueWord scaled = scale_to_fraction(zadoff_chu(16, 1), config, 1.0);
    CHECK(norm2sq(scaled.samples) == 0.0);

    config.uw_energy_fraction = 0.25;
    UniqueWord zero;
    zero.samples.assign(16, cplx{});
    CHECK_THROWS_AS(scale_to_fraction(zero, config, 1.0), ValidationError);
}

TEST_CASE("sequence spec parsing") {
    CHECK(parse_sequence_spec("zero").kind == SequenceKind::zero);
    const SequenceSpec zc = parse_sequence_spec("zc:3");
    CHECK(zc.kind == SequenceKind::zadoff_chu);
    CHECK(zc.root == 3);
    CHECK(parse_sequence_spec("zadoff-chu:5").root == 5);
    const SequenceSpec f = parse_sequence_spec("file:/tmp/uw.txt");
    CHECK(f.kind == SequenceKind::file);
    CHECK(f.path == "/tmp/uw.txt");
    CHECK_THROWS_AS(parse_sequence_spec("nonsense"), ValidationError);
    CHECK_THROWS_AS(parse_sequence_spec("zc:"), ValidationError);
}

TEST_CASE("realize and re-emit") {
    const SystemConfig config = default_80211a_like();
    const UniqueWord uw = realize_sequence(parse_sequence_spec("zc:1"), config);
    CHECK(uw.samples.size() == config.n_uw);
    CHECK(uw.label == "zc1");

    const std::string path = (std::filesystem::temp_directory_path() / "uwofdm_seq_emit.txt").string();
    {
        std::ofstream out(path);
        write_sequence(uw, out);
    }
    const UniqueWord back = load_sequence(path, config.n_uw);
    CHECK(max_abs_diff(back.samples, uw.samples) < 1e-15);
}

} // TEST_SUITE
