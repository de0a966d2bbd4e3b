#include "uwofdm/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>

#include "uwofdm/errors.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/qam.hpp"
#include "uwofdm/receiver.hpp"
#include "uwofdm/rng.hpp"

namespace uwofdm {

Wilson wilson_interval(std::uint64_t errors, std::uint64_t bits, double z) {
    Wilson w;
    if (bits == 0) return w;
    const double n = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

double calibrate_noise(const SystemConfig& config, const EnergyBreakdown& energy, double ebn0_db,
                       unsigned bits_per_symbol) {
    if (energy.e_total <= 0.0) throw ValidationError("calibrate_noise: e_total must be positive");
    if (config.n_data == 0 || bits_per_symbol == 0) {
        throw ValidationError("calibrate_noise: no information bits per symbol");
    }
    const double eb = energy.e_total / (static_cast<double>(config.n_data) * bits_per_symbol);
    return eb * std::pow(10.0, -ebn0_db / 10.0);
}

namespace {

double noise_for(double charged_energy, std::size_t data_symbols_per_block, unsigned bits_per_symbol,
                 double ebn0_db) {
    const double eb = charged_energy / (static_cast<double>(data_symbols_per_block) * bits_per_symbol);
    return eb * std::pow(10.0, -ebn0_db / 10.0);
}

struct ChunkResult {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
};

struct UwContext {
    UniqueWord uw;
    CVec spectrum_two_step;
    CVec spectrum_direct;
    EnergyBreakdown energy_two;
    EnergyBreakdown energy_direct_;
};

// One (approach, uw, ebn0) cell of the sweep.
struct PointPlan {
    Approach approach = Approach::two_step;
    double ebn0_db = 0.0;
    double sigma2_n = 0.0;
    std::size_t uw_index = 0; // unused for the CP reference
    std::string uw_label;
    std::size_t info_bits_per_symbol = 0;
    std::size_t point_index = 0;
};

void check_spec(const SweepSpec& spec) {
    if (spec.ebn0_db.empty()) throw ValidationError("sweep: ebn0_db list is empty");
    for (std::size_t i = 1; i < spec.ebn0_db.size(); ++i) {
        if (!(spec.ebn0_db[i] > spec.ebn0_db[i - 1])) {
            throw ValidationError("sweep: ebn0_db values must be strictly ascending");
        }
    }
    if (spec.approaches.empty()) throw ValidationError("sweep: approaches list is empty");
    if (spec.min_bit_errors == 0) throw ValidationError("sweep: min_bit_errors must be >= 1");
    if (spec.max_bits == 0) throw ValidationError("sweep: max_bits must be >= 1");
    if (spec.symbols_per_chunk == 0) throw ValidationError("sweep: symbols_per_chunk must be >= 1");
    const bool wants_uw = std::any_of(spec.approaches.begin(), spec.approaches.end(),
                                      [](Approach a) { return a != Approach::cp_reference; });
    if (wants_uw && spec.uw_specs.empty()) {
        throw ValidationError("sweep: a unique word spec is required for the UW approaches");
    }
}

ChunkResult run_uw_chunk(const SystemConfig& config, const GeneratorMatrices& gen, const ReceiverOperator& rx,
                         const Constellation& c, const ChannelTaps& taps, double sigma2_n, Approach approach,
                         const UniqueWord& uw, std::uint64_t chunk_seed, std::size_t symbols) {
    Rng rng(chunk_seed);
    const std::size_t nbits = config.n_data * c.bits_per_symbol;
    std::vector<std::uint8_t> bits(nbits);
    ChunkResult res;
    for (std::size_t s = 0; s < symbols; ++s) {
        for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        const CVec data = map_bits(bits, c);
        const SymbolFrames frames =
            (approach == Approach::two_step) ? generate_two_step(gen, data, uw) : generate_direct(gen, data, uw);
        const CVec received = transmit(frames.time, taps, NoiseModel{sigma2_n, rng.next_u64()});
        const CVec estimate = decode(received, rx, config);
        const std::vector<std::uint8_t> out = demap(estimate, c);
        res.bits += nbits;
        for (std::size_t i = 0; i < nbits; ++i) res.errors += (bits[i] != out[i]);
    }
    return res;
}

ChunkResult run_cp_chunk(const CpOfdmParams& params, const Constellation& c, const ChannelTaps& taps,
                         double sigma2_n, std::uint64_t chunk_seed, std::size_t symbols) {
    Rng rng(chunk_seed);
    const std::size_t nbits = params.bits_per_symbol(c) * symbols;
    std::vector<std::uint8_t> bits(nbits);
    for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    const std::vector<std::uint8_t> out = cp_ofdm_reference(bits, taps, NoiseModel{sigma2_n, rng.next_u64()},
                                                            params, c);
    ChunkResult res;
    res.bits = nbits;
    for (std::size_t i = 0; i < nbits; ++i) res.errors += (bits[i] != out[i]);
    return res;
}

struct Slot {
    ChunkResult result;
    std::exception_ptr error;
};

// Accumulates whole chunks in index order until the stopping rule fires.
// The parallel path may compute chunks past the stop and discard them, so
// the totals match the serial path exactly.
BerPoint accumulate_point(const PointPlan& plan, const SweepSpec& spec,
                          const std::function<ChunkResult(std::uint64_t)>& chunk_fn, bool parallel) {
    const std::uint64_t chunk_bits =
        static_cast<std::uint64_t>(spec.symbols_per_chunk) * plan.info_bits_per_symbol;
    const std::uint64_t max_chunks = (spec.max_bits + chunk_bits - 1) / chunk_bits;

    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    bool stopped = false;

    if (!parallel) {
        for (std::uint64_t chunk = 0; chunk < max_chunks && !stopped; ++chunk) {
            const ChunkResult r = chunk_fn(chunk);
            bits += r.bits;
            errors += r.errors;
            if (errors >= spec.min_bit_errors || bits >= spec.max_bits) stopped = true;
        }
    } else {
        // Waves double from 4 to 32 chunks so a point that stops after one
        // chunk wastes little work while long points amortize the joins.
        // Chunks computed past the stop index are discarded, which keeps the
        // totals identical to the serial path for any wave schedule.
        constexpr std::uint64_t kMaxWave = 32;
        std::uint64_t wave = 4;
        std::vector<Slot> slots;
        for (std::uint64_t base = 0; base < max_chunks && !stopped;) {
            const std::uint64_t count = std::min<std::uint64_t>(wave, max_chunks - base);
            slots.assign(static_cast<std::size_t>(count), Slot{});
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (long long i = 0; i < static_cast<long long>(count); ++i) {
                try {
                    slots[static_cast<std::size_t>(i)].result = chunk_fn(base + static_cast<std::uint64_t>(i));
                } catch (...) {
                    slots[static_cast<std::size_t>(i)].error = std::current_exception();
                }
            }
            for (std::uint64_t i = 0; i < count && !stopped; ++i) {
                const Slot& s = slots[static_cast<std::size_t>(i)];
                if (s.error) std::rethrow_exception(s.error);
                bits += s.result.bits;
                errors += s.result.errors;
                if (errors >= spec.min_bit_errors || bits >= spec.max_bits) stopped = true;
            }
            base += count;
            wave = std::min(wave * 2, kMaxWave);
        }
    }

    BerPoint point;
    point.ebn0_db = plan.ebn0_db;
    point.bits_simulated = bits;
    point.bit_errors = errors;
    point.ber = (bits > 0) ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    point.approach = plan.approach;
    point.uw_label = plan.uw_label;
    return point;
}

void log_point(std::ostream* log, const BerPoint& p) {
    if (!log) return;
    const Wilson w = wilson_interval(p.bit_errors, p.bits_simulated);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "point approach=%s uw=%s ebn0=%.4g bits=%llu errors=%llu ber=%.4e ci95=[%.3e,%.3e]\n",
                  approach_name(p.approach), p.uw_label.c_str(), p.ebn0_db,
                  static_cast<unsigned long long>(p.bits_simulated),
                  static_cast<unsigned long long>(p.bit_errors), p.ber, w.lo, w.hi);
    *log << buf << std::flush;
}

std::vector<BerPoint> run_sweep_impl(const SweepSpec& spec, const SystemConfig& config, std::ostream* log,
                                     bool parallel) {
    check_spec(spec);
    validate(config);
    const Constellation constellation = make_constellation(spec.qam_order, config.sigma2_d);

    const bool wants_uw = std::any_of(spec.approaches.begin(), spec.approaches.end(),
                                      [](Approach a) { return a != Approach::cp_reference; });

    GeneratorMatrices gen;
    std::vector<UwContext> uws;
    if (wants_uw) {
        gen = build_generator(config);
        const EnergyBreakdown base = energy_two_step(gen, config, UniqueWord{CVec(config.n_uw), "zero"});
        const double e_data_plus_red = base.e_d + base.e_r;
        for (const SequenceSpec& sspec : spec.uw_specs) {
            UwContext ctx;
            const UniqueWord raw = realize_sequence(sspec, config);
            ctx.uw = (sspec.kind == SequenceKind::zero) ? raw : scale_to_fraction(raw, config, e_data_plus_red);
            ctx.uw.label = raw.label;
            ctx.spectrum_two_step = uw_spectrum_two_step(ctx.uw, config.n_total);
            ctx.spectrum_direct = uw_spectrum_direct(gen, ctx.uw);
            ctx.energy_two = energy_two_step(gen, config, ctx.uw);
            ctx.energy_direct_ = energy_direct(gen, config, ctx.uw);
            uws.push_back(std::move(ctx));
        }
    }

    const CpOfdmParams cp_params = CpOfdmParams::ieee80211a_like(config.sigma2_d);

    std::vector<PointPlan> plans;
    std::size_t point_index = 0;
    for (Approach approach : spec.approaches) {
        if (approach == Approach::cp_reference) {
            const double charged = (spec.accounting == EbAccounting::all_energy) ? cp_params.mean_symbol_energy()
                                                                                 : cp_params.data_energy();
            for (double ebn0 : spec.ebn0_db) {
                PointPlan plan;
                plan.approach = approach;
                plan.ebn0_db = ebn0;
                plan.uw_label = "-";
                plan.info_bits_per_symbol = cp_params.bits_per_symbol(constellation);
                plan.sigma2_n = noise_for(charged, cp_params.data_bins.size(), constellation.bits_per_symbol, ebn0);
                plan.point_index = point_index++;
                plans.push_back(std::move(plan));
            }
        } else {
            for (std::size_t u = 0; u < uws.size(); ++u) {
                const EnergyBreakdown& energy =
                    (approach == Approach::two_step) ? uws[u].energy_two : uws[u].energy_direct_;
                const double charged = (spec.accounting == EbAccounting::all_energy) ? energy.e_total : energy.e_d;
                for (double ebn0 : spec.ebn0_db) {
                    PointPlan plan;
                    plan.approach = approach;
                    plan.ebn0_db = ebn0;
                    plan.uw_index = u;
                    plan.uw_label = uws[u].uw.label;
                    plan.info_bits_per_symbol = config.n_data * constellation.bits_per_symbol;
                    plan.sigma2_n = noise_for(charged, config.n_data, constellation.bits_per_symbol, ebn0);
                    plan.point_index = point_index++;
                    plans.push_back(std::move(plan));
                }
            }
        }
    }

    std::vector<BerPoint> points;
    points.reserve(plans.size());
    for (const PointPlan& plan : plans) {
        BerPoint point;
        if (plan.approach == Approach::cp_reference) {
            auto chunk_fn = [&](std::uint64_t chunk) {
                return run_cp_chunk(cp_params, constellation, spec.taps, plan.sigma2_n,
                                    derive_seed(spec.seed, plan.point_index + 1, chunk + 1),
                                    spec.symbols_per_chunk);
            };
            point = accumulate_point(plan, spec, chunk_fn, parallel);
        } else {
            const UwContext& ctx = uws[plan.uw_index];
            const CVec& spectrum =
                (plan.approach == Approach::two_step) ? ctx.spectrum_two_step : ctx.spectrum_direct;
            const ReceiverOperator rx =
                build_receiver(gen, spec.taps, plan.sigma2_n, config.sigma2_d, spectrum, config);
            auto chunk_fn = [&](std::uint64_t chunk) {
                return run_uw_chunk(config, gen, rx, constellation, spec.taps, plan.sigma2_n, plan.approach,
                                    ctx.uw, derive_seed(spec.seed, plan.point_index + 1, chunk + 1),
                                    spec.symbols_per_chunk);
            };
            point = accumulate_point(plan, spec, chunk_fn, parallel);
        }
        log_point(log, point);
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace

std::vector<BerPoint> run_sweep(const SweepSpec& spec, const SystemConfig& config, std::ostream* log) {
    return run_sweep_impl(spec, config, log, true);
}

std::vector<BerPoint> run_sweep_serial(const SweepSpec& spec, const SystemConfig& config, std::ostream* log) {
    return run_sweep_impl(spec, config, log, false);
}

void emit_csv(const std::vector<BerPoint>& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps LF endings everywhere
    if (!out) throw IoError("emit_csv: cannot open " + path);
    out << "ebn0_db,approach,uw_label,bits,errors,ber\n";
    char buf[192];
    for (const BerPoint& p : points) {
        std::snprintf(buf, sizeof(buf), "%.10g,%s,%s,%llu,%llu,%.10g\n", p.ebn0_db, approach_name(p.approach),
                      p.uw_label.c_str(), static_cast<unsigned long long>(p.bits_simulated),
                      static_cast<unsigned long long>(p.bit_errors), p.ber);
        out << buf;
    }
    if (!out) throw IoError("emit_csv: write failed for " + path);
}

} // namespace uwofdm
