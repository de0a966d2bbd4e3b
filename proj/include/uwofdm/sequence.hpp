#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "uwofdm/config.hpp"
#include "uwofdm/linalg.hpp"

namespace uwofdm {

// Deterministic tail sequence occupying the last n_uw samples of a symbol.
struct UniqueWord {
    CVec samples;
    std::string label;
};

enum class SequenceKind { zero, zadoff_chu, file };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::zero;
    std::size_t root = 1;    // zadoff_chu only
    std::string path;        // file only
    std::size_t pad_to = 0;  // 0 means "use the config's n_uw"
};

// Polyphase chirp, unit modulus, all nonzero-lag cyclic autocorrelations
// vanish when gcd(root, length) == 1.
UniqueWord zadoff_chu(std::size_t length, std::size_t root);

// One sample per line, "re im", '#' starts a comment. Entries are read in
// order and zero padded at the tail to pad_to.
UniqueWord load_sequence(const std::string& path, std::size_t pad_to);

// Raw complex samples from the same file format; shared by tap files.
CVec read_complex_lines(const std::string& path);

// Positive real scaling so that the scaled word's energy is
// fraction/(1-fraction) * e_data_plus_red, i.e. exactly `fraction` of the
// total two-step symbol energy. fraction == 0 returns the zero word.
UniqueWord scale_to_fraction(const UniqueWord& uw, const SystemConfig& config, double e_data_plus_red);

// "zero" | "zc:<root>" | "zadoff-chu:<root>" | "file:<path>"
SequenceSpec parse_sequence_spec(const std::string& text);

// Generates or loads the unscaled word at length config.n_uw (or
// spec.pad_to when nonzero).
UniqueWord realize_sequence(const SequenceSpec& spec, const SystemConfig& config);

void write_sequence(const UniqueWord& uw, std::ostream& out);

} // namespace uwofdm
