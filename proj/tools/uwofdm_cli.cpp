// Command line front end: generator matrix dumps, closed-form energy
// tables, Monte Carlo BER sweeps and sequence generation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/energy.hpp"
#include "uwofdm/errors.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/sequence.hpp"
#include "uwofdm/sweep.hpp"

namespace {

using namespace uwofdm;

SystemConfig resolve_config(const std::string& path) {
    if (path.empty()) return default_80211a_like();
    return load_config(path);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path);
    return file;
}

void dump_matrix(std::ostream& out, const char* name, const CMatrix& m) {
    char buf[128];
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%.17g,%.17g\n", name, r, c, m(r, c).real(),
                          m(r, c).imag());
            out << buf;
        }
    }
}

int cmd_matrices(const std::string& config_path, const std::string& out_path) {
    const SystemConfig config = resolve_config(config_path);
    const GeneratorMatrices gen = build_generator(config);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);

    const double cond = frobenius(gen.tail_from_redundant) * frobenius(gen.tail_from_redundant_inv);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# tr_t_gram = %.17g\n", trace_of_gram(gen.redundancy));
    out << buf;
    std::snprintf(buf, sizeof(buf), "# m22_cond_fro = %.17g\n", cond);
    out << buf;
    out << "matrix,row,col,re,im\n";
    dump_matrix(out, "T", gen.redundancy);
    dump_matrix(out, "G", gen.precoder);
    return 0;
}

int cmd_energy(const std::string& config_path, const std::vector<std::string>& uw_texts,
               const std::string& out_path) {
    const SystemConfig config = resolve_config(config_path);
    const GeneratorMatrices gen = build_generator(config);
    const EnergyBreakdown base = energy_two_step(gen, config, UniqueWord{CVec(config.n_uw), "zero"});
    const double e_data_plus_red = base.e_d + base.e_r;

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    out << "label,approach,e_d,e_r,e_u,e_total,excess,db_vs_two_step\n";
    char buf[256];
    for (const std::string& text : uw_texts) {
        const SequenceSpec spec = parse_sequence_spec(text);
        const UniqueWord raw = realize_sequence(spec, config);
        const UniqueWord uw =
            (spec.kind == SequenceKind::zero) ? raw : scale_to_fraction(raw, config, e_data_plus_red);
        const EnergyBreakdown two = energy_two_step(gen, config, uw);
        const EnergyBreakdown dir = energy_direct(gen, config, uw);
        for (const EnergyBreakdown* e : {&two, &dir}) {
            std::snprintf(buf, sizeof(buf), "%s,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", raw.label.c_str(),
                          approach_name(e->approach), e->e_d, e->e_r, e->e_u, e->e_total, e->excess,
                          db_shift(e->e_total, two.e_total));
            out << buf;
        }
    }
    return 0;
}

std::vector<double> parse_ebn0(const std::string& text) {
    std::vector<double> out;
    const std::size_t c1 = text.find(':');
    if (c1 != std::string::npos) {
        const std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ValidationError("--ebn0 range must be LO:HI:STEP");
        const double lo = std::stod(text.substr(0, c1));
        const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(text.substr(c2 + 1));
        if (step <= 0.0) throw ValidationError("--ebn0 step must be positive");
        for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int cmd_ber(const std::string& config_path, const std::vector<std::string>& uw_texts,
            const std::vector<std::string>& approach_texts, const std::string& ebn0_text,
            const std::string& taps_path, std::uint64_t seed, std::size_t min_errors, std::uint64_t max_bits,
            unsigned order, const std::string& accounting, bool serial, const std::string& out_path) {
    const SystemConfig config = resolve_config(config_path);

    SweepSpec spec;
    spec.ebn0_db = parse_ebn0(ebn0_text);
    for (const std::string& a : approach_texts) spec.approaches.push_back(parse_approach(a));
    for (const std::string& u : uw_texts) spec.uw_specs.push_back(parse_sequence_spec(u));
    if (!taps_path.empty()) spec.taps = load_taps(taps_path);
    spec.seed = seed;
    spec.min_bit_errors = min_errors;
    spec.max_bits = max_bits;
    spec.qam_order = order;
    if (accounting == "all") {
        spec.accounting = EbAccounting::all_energy;
    } else if (accounting == "data") {
        spec.accounting = EbAccounting::data_only;
    } else {
        throw ValidationError("--accounting must be 'all' or 'data'");
    }

    const std::vector<BerPoint> points =
        serial ? run_sweep_serial(spec, config, &std::cout) : run_sweep(spec, config, &std::cout);
    emit_csv(points, out_path);
    std::cout << "wrote " << points.size() << " points to " << out_path << "\n";
    return 0;
}

int cmd_sequence(const std::string& kind, std::size_t length, std::size_t root, const std::string& out_path) {
    UniqueWord uw;
    if (kind == "zadoff-chu" || kind == "zc") {
        uw = zadoff_chu(length, root);
    } else if (kind == "zero") {
        uw.samples.assign(length, cplx{});
        uw.label = "zero";
    } else {
        throw ValidationError("--kind must be zadoff-chu or zero");
    }
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    write_sequence(uw, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unique-word OFDM baseband simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --config appear after the subcommand name

    std::string config_path;
    app.add_option("--config", config_path, "System config file (defaults to the built-in 64-carrier layout)");

    auto* matrices = app.add_subcommand("matrices", "Dump the generator matrices and their stats as CSV");
    std::string matrices_out;
    matrices->add_option("--out", matrices_out, "Output file (stdout when omitted)");

    auto* energy = app.add_subcommand("energy", "Closed-form symbol energy breakdown per approach and UW");
    std::vector<std::string> energy_uws;
    std::string energy_out;
    energy->add_option("--uw", energy_uws, "Sequence spec: zero | zc:<root> | file:<path>")->required();
    energy->add_option("--out", energy_out, "Output file (stdout when omitted)");

    auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep, CSV output");
    std::vector<std::string> ber_uws;
    std::vector<std::string> ber_approaches;
    std::string ebn0_text, taps_path, ber_out, accounting = "all";
    std::uint64_t seed = 1, max_bits = 10'000'000;
    std::size_t min_errors = 1000;
    unsigned order = 4;
    bool serial = false;
    ber->add_option("--uw", ber_uws, "Sequence spec: zero | zc:<root> | file:<path>");
    ber->add_option("--approach", ber_approaches, "two-step | direct | cp-reference")->required();
    ber->add_option("--ebn0", ebn0_text, "Eb/N0 grid in dB: LO:HI:STEP or comma list")->required();
    ber->add_option("--taps", taps_path, "Channel tap file (identity channel when omitted)");
    ber->add_option("--seed", seed, "Base seed");
    ber->add_option("--min-errors", min_errors, "Bit errors to collect per point");
    ber->add_option("--max-bits", max_bits, "Bit budget per point");
    ber->add_option("--order", order, "QAM order, 4 or 16");
    ber->add_option("--accounting", accounting, "Eb accounting: all (every transmitted joule) or data");
    ber->add_flag("--serial", serial, "Use the serial reference runner");
    ber->add_option("--out", ber_out, "Output CSV file")->required();

    auto* sequence = app.add_subcommand("sequence", "Emit a generated sequence in the sample file format");
    std::string seq_kind = "zadoff-chu", seq_out;
    std::size_t seq_length = 16, seq_root = 1;
    sequence->add_option("--kind", seq_kind, "zadoff-chu | zero");
    sequence->add_option("--length", seq_length, "Sequence length");
    sequence->add_option("--root", seq_root, "Zadoff-Chu root");
    sequence->add_option("--out", seq_out, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (matrices->parsed()) return cmd_matrices(config_path, matrices_out);
        if (energy->parsed()) return cmd_energy(config_path, energy_uws, energy_out);
        if (ber->parsed()) {
            return cmd_ber(config_path, ber_uws, ber_approaches, ebn0_text, taps_path, seed, min_errors,
                           max_bits, order, accounting, serial, ber_out);
        }
        if (sequence->parsed()) return cmd_sequence(seq_kind, seq_length, seq_root, seq_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const uwofdm::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const uwofdm::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const uwofdm::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
