#include "uwofdm/energy.hpp"

#include <cmath>
#include <cstdio>

#include "uwofdm/errors.hpp"
#include "uwofdm/rng.hpp"

namespace uwofdm {

const char* approach_name(Approach a) {
    switch (a) {
        case Approach::two_step: return "two_step";
        case Approach::direct: return "direct";
        case Approach::cp_reference: return "cp_reference";
    }
    return "?";
}

Approach parse_approach(const std::string& text) {
    if (text == "two_step" || text == "two-step") return Approach::two_step;
    if (text == "direct") return Approach::direct;
    if (text == "cp_reference" || text == "cp-reference" || text == "cp") return Approach::cp_reference;
    throw ValidationError("unknown approach '" + text + "', expected two-step | direct | cp-reference");
}

EnergyBreakdown energy_two_step(const GeneratorMatrices& gen, const SystemConfig& config, const UniqueWord& uw) {
    const double n = static_cast<double>(config.n_total);
    EnergyBreakdown e;
    e.approach = Approach::two_step;
    e.e_d = static_cast<double>(config.n_data) * config.sigma2_d / n;
    e.e_r = config.sigma2_d / n * trace_of_gram(gen.redundancy);
    e.e_u = norm2sq(uw.samples);
    e.e_total = e.e_d + e.e_r + e.e_u;
    e.excess = 0.0;
    return e;
}

EnergyBreakdown energy_direct(const GeneratorMatrices& gen, const SystemConfig& config, const UniqueWord& uw) {
    EnergyBreakdown e = energy_two_step(gen, config, uw);
    e.approach = Approach::direct;
    const CVec loading = matvec(gen.tail_from_redundant_inv, uw.samples);
    e.e_u = norm2sq(loading) / static_cast<double>(config.n_total);
    e.e_total = e.e_d + e.e_r + e.e_u;
    e.excess = e.e_u - norm2sq(uw.samples);
    return e;
}

double db_shift(double e_a, double e_b) {
    if (e_a <= 0.0 || e_b <= 0.0) throw ValidationError("db_shift: energies must be positive");
    return 10.0 * std::log10(e_a / e_b);
}

InequalityReport verify_inequality(const GeneratorMatrices& gen, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw ValidationError("verify_inequality: trials must be >= 1");
    const std::size_t n_uw = gen.tail_from_redundant.rows;
    const double n = static_cast<double>(gen.n_total);

    InequalityReport report;
    report.trials = trials;
    double sum_ratio = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t + 1));
        CVec uw(n_uw);
        for (cplx& s : uw) s = rng.cgaussian(1.0);
        const double uw_energy = norm2sq(uw);
        const CVec loading = matvec(gen.tail_from_redundant_inv, uw);
        const double gen_energy = norm2sq(loading) / n;
        if (gen_energy < uw_energy * (1.0 - 1e-12)) {
            ++report.violations;
            std::string dump = "verify_inequality: violated at draw " + std::to_string(t) + ", uw = [";
            char buf[64];
            for (const cplx& s : uw) {
                std::snprintf(buf, sizeof(buf), "(%.17g,%.17g) ", s.real(), s.imag());
                dump += buf;
            }
            dump += "]";
            throw NumericalError(dump);
        }
        const double ratio = gen_energy / uw_energy;
        sum_ratio += ratio;
        if (t == 0 || ratio < report.min_ratio) report.min_ratio = ratio;
        if (t == 0 || ratio > report.max_ratio) report.max_ratio = ratio;
    }
    report.mean_ratio = sum_ratio / static_cast<double>(trials);
    return report;
}

} // namespace uwofdm
