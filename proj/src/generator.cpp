#include "uwofdm/generator.hpp"

#include <cmath>

#include "uwofdm/errors.hpp"

namespace uwofdm {

namespace {

constexpr double kZeroTailTolerance = 1e-10;

// Used-carrier vector in stacked [data; redundant] order scattered onto all
// n_total bins. Zero carriers stay zero.
CVec scatter_to_bins(const GeneratorMatrices& gen, const CVec& data, const CVec& redundant) {
    CVec bins(gen.n_total, cplx{});
    for (std::size_t i = 0; i < gen.data_bins.size(); ++i) bins[gen.data_bins[i]] = data[i];
    for (std::size_t k = 0; k < gen.redundant_bins.size(); ++k) bins[gen.redundant_bins[k]] = redundant[k];
    return bins;
}

} // namespace

CMatrix zero_insertion_matrix(const SystemConfig& config) {
    const std::vector<std::size_t> used = used_carrier_indices(config);
    CMatrix b(config.n_total, used.size());
    for (std::size_t u = 0; u < used.size(); ++u) b(used[u], u) = 1.0;
    return b;
}

CMatrix placement_matrix(const SystemConfig& config) {
    const std::vector<std::size_t> used = used_carrier_indices(config);
    const std::vector<std::size_t> data = data_carrier_indices(config);
    const std::size_t n_used = used.size();
    CMatrix p(n_used, n_used);
    std::size_t data_rank = 0;
    std::size_t red_rank = 0;
    for (std::size_t u = 0; u < n_used; ++u) {
        const bool is_data = data_rank < data.size() && data[data_rank] == used[u];
        if (is_data) {
            p(u, data_rank) = 1.0;
            ++data_rank;
        } else {
            p(u, data.size() + red_rank) = 1.0;
            ++red_rank;
        }
    }
    return p;
}

PartitionedGenerator partition_generator(const SystemConfig& config) {
    validate(config);
    const CMatrix bp = matmul(zero_insertion_matrix(config), placement_matrix(config));
    const CMatrix m = matmul(idft_matrix(config.n_total), bp);
    const std::size_t row_split = config.n_total - config.n_uw;
    PartitionedGenerator part;
    part.payload_from_data = block(m, 0, 0, row_split, config.n_data);
    part.payload_from_redundant = block(m, 0, config.n_data, row_split, config.n_red);
    part.tail_from_data = block(m, row_split, 0, config.n_uw, config.n_data);
    part.tail_from_redundant = block(m, row_split, config.n_data, config.n_uw, config.n_red);
    return part;
}

GeneratorMatrices build_generator(const SystemConfig& config) {
    PartitionedGenerator part = partition_generator(config);

    GeneratorMatrices gen;
    gen.n_total = config.n_total;
    gen.data_bins = data_carrier_indices(config);
    gen.redundant_bins = config.redundant_carrier_indices;
    gen.zero_insertion = zero_insertion_matrix(config);
    gen.placement = placement_matrix(config);
    gen.tail_from_data = std::move(part.tail_from_data);
    gen.tail_from_redundant = std::move(part.tail_from_redundant);
    try {
        gen.tail_from_redundant_inv = invert(gen.tail_from_redundant);
    } catch (const NumericalError&) {
        throw NumericalError("build_generator: tail block singular, redundant-carrier placement is degenerate");
    }

    // redundancy = -inv(tail_from_redundant) * tail_from_data
    gen.redundancy = matmul(gen.tail_from_redundant_inv, gen.tail_from_data);
    for (cplx& e : gen.redundancy.a) e = -e;

    // precoder = placement * [I; redundancy]
    const std::size_t n_data = config.n_data;
    const std::size_t n_red = config.n_red;
    CMatrix stacked(n_data + n_red, n_data);
    for (std::size_t i = 0; i < n_data; ++i) stacked(i, i) = 1.0;
    for (std::size_t k = 0; k < n_red; ++k)
        for (std::size_t j = 0; j < n_data; ++j) stacked(n_data + k, j) = gen.redundancy(k, j);
    gen.precoder = matmul(gen.placement, stacked);
    return gen;
}

SymbolFrames generate_two_step(const GeneratorMatrices& gen, const CVec& data, const UniqueWord& uw, bool strict) {
    if (data.size() != gen.data_bins.size()) throw ValidationError("generate_two_step: data length mismatch");
    if (uw.samples.size() != gen.redundant_bins.size()) {
        throw ValidationError("generate_two_step: unique word length mismatch");
    }
    SymbolFrames out;
    out.data_symbols = data;
    out.redundant_symbols = matvec(gen.redundancy, data);

    const CVec zeroword_spectrum = scatter_to_bins(gen, data, out.redundant_symbols);
    out.time = idft_apply(zeroword_spectrum);

    const std::size_t n_uw = uw.samples.size();
    const std::size_t tail0 = gen.n_total - n_uw;
    if (strict) {
        for (std::size_t i = 0; i < n_uw; ++i) {
            if (std::abs(out.time[tail0 + i]) > kZeroTailTolerance) {
                throw NumericalError("generate_two_step: zero-word tail residual above tolerance");
            }
        }
    }
    for (std::size_t i = 0; i < n_uw; ++i) out.time[tail0 + i] += uw.samples[i];
    out.freq = dft_apply(out.time);
    return out;
}

SymbolFrames generate_direct(const GeneratorMatrices& gen, const CVec& data, const UniqueWord& uw) {
    if (data.size() != gen.data_bins.size()) throw ValidationError("generate_direct: data length mismatch");
    if (uw.samples.size() != gen.redundant_bins.size()) {
        throw ValidationError("generate_direct: unique word length mismatch");
    }
    SymbolFrames out;
    out.data_symbols = data;
    out.redundant_symbols = matvec(gen.redundancy, data);
    const CVec uw_part = matvec(gen.tail_from_redundant_inv, uw.samples);
    for (std::size_t k = 0; k < out.redundant_symbols.size(); ++k) out.redundant_symbols[k] += uw_part[k];

    out.freq = scatter_to_bins(gen, data, out.redundant_symbols);
    out.time = idft_apply(out.freq);
    return out;
}

CVec uw_spectrum_two_step(const UniqueWord& uw, std::size_t n_total) {
    if (uw.samples.size() > n_total) throw ValidationError("uw_spectrum_two_step: unique word longer than symbol");
    CVec extension(n_total, cplx{});
    const std::size_t tail0 = n_total - uw.samples.size();
    for (std::size_t i = 0; i < uw.samples.size(); ++i) extension[tail0 + i] = uw.samples[i];
    return dft_apply(extension);
}

CVec uw_spectrum_direct(const GeneratorMatrices& gen, const UniqueWord& uw) {
    if (uw.samples.size() != gen.redundant_bins.size()) {
        throw ValidationError("uw_spectrum_direct: unique word length mismatch");
    }
    const CVec loading = matvec(gen.tail_from_redundant_inv, uw.samples);
    CVec spectrum(gen.n_total, cplx{});
    for (std::size_t k = 0; k < loading.size(); ++k) spectrum[gen.redundant_bins[k]] = loading[k];
    return spectrum;
}

} // namespace uwofdm
