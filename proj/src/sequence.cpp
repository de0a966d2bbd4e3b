#include "uwofdm/sequence.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "uwofdm/errors.hpp"

namespace uwofdm {

UniqueWord zadoff_chu(std::size_t length, std::size_t root) {
    if (length == 0) throw ValidationError("zadoff_chu: length must be positive");
    if (root < 1 || root >= length) throw ValidationError("zadoff_chu: root must lie in [1, length)");
    if (std::gcd(root, length) != 1) {
        throw ValidationError("zadoff_chu: root " + std::to_string(root) + " not coprime with length " +
                              std::to_string(length));
    }
    UniqueWord uw;
    uw.label = "zc" + std::to_string(root);
    uw.samples.resize(length);
    // phase = -pi * root * k^2 / length (even length), -pi * root * k(k+1) / length (odd).
    // The integer exponent is reduced mod 2*length before the float conversion.
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(length);
    for (std::size_t k = 0; k < length; ++k) {
        const std::uint64_t kk = static_cast<std::uint64_t>(k);
        const std::uint64_t quad = (length % 2 == 0) ? kk * kk : kk * (kk + 1);
        const std::uint64_t e = (static_cast<std::uint64_t>(root) * quad) % period;
        uw.samples[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(e) / static_cast<double>(length));
    }
    return uw;
}

CVec read_complex_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sample file: " + path);
    CVec samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re)) {
            std::string rest;
            ss.clear();
            if (ss >> rest) {
                throw ValidationError(path + " line " + std::to_string(lineno) + ": expected 're im'");
            }
            continue; // blank or comment-only line
        }
        if (!(ss >> im)) throw ValidationError(path + " line " + std::to_string(lineno) + ": expected 're im'");
        std::string extra;
        if (ss >> extra) throw ValidationError(path + " line " + std::to_string(lineno) + ": trailing tokens");
        samples.emplace_back(re, im);
    }
    return samples;
}

UniqueWord load_sequence(const std::string& path, std::size_t pad_to) {
    CVec samples = read_complex_lines(path);
    if (samples.size() > pad_to) {
        throw ValidationError(path + ": " + std::to_string(samples.size()) + " entries exceed target length " +
                              std::to_string(pad_to));
    }
    samples.resize(pad_to, cplx{});
    UniqueWord uw;
    uw.samples = std::move(samples);
    const std::size_t slash = path.find_last_of("/\\");
    uw.label = (slash == std::string::npos) ? path : path.substr(slash + 1);
    return uw;
}

UniqueWord scale_to_fraction(const UniqueWord& uw, const SystemConfig& config, double e_data_plus_red) {
    const double fraction = config.uw_energy_fraction;
    if (fraction < 0.0 || fraction >= 1.0) throw ValidationError("scale_to_fraction: fraction must lie in [0, 1)");
    UniqueWord out = uw;
    if (fraction == 0.0) {
        for (cplx& s : out.samples) s = cplx{};
        return out;
    }
    const double energy = norm2sq(uw.samples);
    if (energy == 0.0) {
        throw ValidationError("scale_to_fraction: zero word cannot carry a positive energy fraction");
    }
    const double target = fraction / (1.0 - fraction) * e_data_plus_red;
    const double alpha = std::sqrt(target / energy);
    for (cplx& s : out.samples) s *= alpha;
    return out;
}

SequenceSpec parse_sequence_spec(const std::string& text) {
    SequenceSpec spec;
    if (text == "zero") {
        spec.kind = SequenceKind::zero;
        return spec;
    }
    const std::size_t colon = text.find(':');
    const std::string head = (colon == std::string::npos) ? text : text.substr(0, colon);
    const std::string tail = (colon == std::string::npos) ? "" : text.substr(colon + 1);
    if (head == "zc" || head == "zadoff-chu") {
        spec.kind = SequenceKind::zadoff_chu;
        if (tail.empty()) throw ValidationError("sequence spec '" + text + "': missing root, expected zc:<root>");
        try {
            spec.root = std::stoull(tail);
        } catch (const std::exception&) {
            throw ValidationError("sequence spec '" + text + "': bad root");
        }
        return spec;
    }
    if (head == "file") {
        if (tail.empty()) throw ValidationError("sequence spec '" + text + "': missing path");
        spec.kind = SequenceKind::file;
        spec.path = tail;
        return spec;
    }
    throw ValidationError("sequence spec '" + text + "': expected zero | zc:<root> | file:<path>");
}

UniqueWord realize_sequence(const SequenceSpec& spec, const SystemConfig& config) {
    const std::size_t length = spec.pad_to ? spec.pad_to : config.n_uw;
    switch (spec.kind) {
        case SequenceKind::zero: {
            UniqueWord uw;
            uw.samples.assign(length, cplx{});
            uw.label = "zero";
            return uw;
        }
        case SequenceKind::zadoff_chu:
            return zadoff_chu(length, spec.root);
        case SequenceKind::file:
            return load_sequence(spec.path, length);
    }
    throw ValidationError("realize_sequence: unknown kind");
}

void write_sequence(const UniqueWord& uw, std::ostream& out) {
    out << "# " << uw.label << ", " << uw.samples.size() << " samples, one per line: re im\n";
    char buf[96];
    for (const cplx& s : uw.samples) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", s.real(), s.imag());
        out << buf;
    }
}

} // namespace uwofdm
