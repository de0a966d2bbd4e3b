#include "uwofdm/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "uwofdm/errors.hpp"

namespace uwofdm {

SystemConfig default_80211a_like() {
    SystemConfig c;
    c.n_total = 64;
    c.n_uw = 16;
    c.n_red = 16;
    c.n_data = 36;
    c.zero_carrier_indices.push_back(0);
    for (std::size_t bin = 27; bin <= 37; ++bin) c.zero_carrier_indices.push_back(bin);

    std::vector<std::size_t> used;
    for (std::size_t bin = 0; bin < c.n_total; ++bin) {
        if (!std::binary_search(c.zero_carrier_indices.begin(), c.zero_carrier_indices.end(), bin)) {
            used.push_back(bin);
        }
    }
    // k-th redundant carrier sits at used-carrier rank floor((k + 0.5) * n_used / n_red)
    for (std::size_t k = 0; k < c.n_red; ++k) {
        const std::size_t rank = ((2 * k + 1) * used.size()) / (2 * c.n_red);
        c.redundant_carrier_indices.push_back(used[rank]);
    }

    c.sigma2_d = 1.0;
    c.sigma2_n = 0.0;
    c.uw_energy_fraction = 4.0 / 52.0;
    return c;
}

namespace {

void check_index_set(const std::vector<std::size_t>& set, std::size_t n_total, const char* name) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= n_total) {
            throw ValidationError(std::string(name) + ": carrier index " + std::to_string(set[i]) +
                                  " out of range [0, " + std::to_string(n_total) + ")");
        }
        if (i > 0 && set[i] == set[i - 1]) {
            throw ValidationError(std::string(name) + ": duplicate carrier index " + std::to_string(set[i]));
        }
        if (i > 0 && set[i] < set[i - 1]) {
            throw ValidationError(std::string(name) + ": indices not sorted ascending");
        }
    }
}

} // namespace

void validate(const SystemConfig& c) {
    if (c.n_total == 0) throw ValidationError("n_total must be positive");
    if (c.n_red != c.n_uw) {
        throw ValidationError("n_red (" + std::to_string(c.n_red) + ") must equal n_uw (" +
                              std::to_string(c.n_uw) + ")");
    }
    check_index_set(c.zero_carrier_indices, c.n_total, "zero_carrier_indices");
    check_index_set(c.redundant_carrier_indices, c.n_total, "redundant_carrier_indices");
    if (c.redundant_carrier_indices.size() != c.n_red) {
        throw ValidationError("redundant_carrier_indices has " +
                              std::to_string(c.redundant_carrier_indices.size()) + " entries, expected n_red = " +
                              std::to_string(c.n_red));
    }
    for (std::size_t bin : c.redundant_carrier_indices) {
        if (std::binary_search(c.zero_carrier_indices.begin(), c.zero_carrier_indices.end(), bin)) {
            throw ValidationError("carrier " + std::to_string(bin) + " is both zero and redundant");
        }
    }
    if (c.n_data + c.n_red + c.zero_carrier_indices.size() != c.n_total) {
        throw ValidationError("carrier counts do not cover the DFT length: n_data + n_red + zeros = " +
                              std::to_string(c.n_data + c.n_red + c.zero_carrier_indices.size()) +
                              ", n_total = " + std::to_string(c.n_total));
    }
    if (c.sigma2_d < 0.0) throw ValidationError("sigma2_d must be >= 0");
    if (c.sigma2_n < 0.0) throw ValidationError("sigma2_n must be >= 0");
    if (c.uw_energy_fraction < 0.0 || c.uw_energy_fraction >= 1.0) {
        throw ValidationError("uw_energy_fraction must lie in [0, 1)");
    }
}

std::vector<std::size_t> used_carrier_indices(const SystemConfig& c) {
    std::vector<std::size_t> used;
    used.reserve(c.n_total - c.zero_carrier_indices.size());
    for (std::size_t bin = 0; bin < c.n_total; ++bin) {
        if (!std::binary_search(c.zero_carrier_indices.begin(), c.zero_carrier_indices.end(), bin)) {
            used.push_back(bin);
        }
    }
    return used;
}

std::vector<std::size_t> data_carrier_indices(const SystemConfig& c) {
    std::vector<std::size_t> data;
    for (std::size_t bin : used_carrier_indices(c)) {
        if (!std::binary_search(c.redundant_carrier_indices.begin(), c.redundant_carrier_indices.end(), bin)) {
            data.push_back(bin);
        }
    }
    return data;
}

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& value, const std::string& key, std::size_t line) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError("config line " + std::to_string(line) + ": bad integer for " + key);
    }
    if (pos != value.size()) throw ValidationError("config line " + std::to_string(line) + ": bad integer for " + key);
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& value, const std::string& key, std::size_t line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError("config line " + std::to_string(line) + ": bad number for " + key);
    }
    if (pos != value.size()) throw ValidationError("config line " + std::to_string(line) + ": bad number for " + key);
    return v;
}

std::vector<std::size_t> parse_index_set(const std::string& value, const std::string& key, std::size_t line) {
    std::vector<std::size_t> out;
    if (trim(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_count(trim(item), key, line));
    }
    return out;
}

} // namespace

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);

    static const std::set<std::string> known = {
        "n_total", "n_uw", "n_red", "n_data", "zero_carrier_indices", "redundant_carrier_indices",
        "sigma2_d", "sigma2_n", "uw_energy_fraction"};

    std::map<std::string, std::pair<std::string, std::size_t>> values; // key -> (value, line)
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (known.find(key) == known.end()) {
            throw ValidationError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        if (!values.emplace(key, std::make_pair(value, lineno)).second) {
            throw ValidationError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
        }
    }
    for (const std::string& key : known) {
        if (values.find(key) == values.end()) {
            throw ValidationError("config file " + path + ": missing key '" + key + "'");
        }
    }

    SystemConfig c;
    auto get = [&](const char* key) -> std::pair<std::string, std::size_t> { return values.at(key); };
    {
        auto [v, l] = get("n_total");
        c.n_total = parse_count(v, "n_total", l);
    }
    {
        auto [v, l] = get("n_uw");
        c.n_uw = parse_count(v, "n_uw", l);
    }
    {
        auto [v, l] = get("n_red");
        c.n_red = parse_count(v, "n_red", l);
    }
    {
        auto [v, l] = get("n_data");
        c.n_data = parse_count(v, "n_data", l);
    }
    {
        auto [v, l] = get("zero_carrier_indices");
        c.zero_carrier_indices = parse_index_set(v, "zero_carrier_indices", l);
    }
    {
        auto [v, l] = get("redundant_carrier_indices");
        c.redundant_carrier_indices = parse_index_set(v, "redundant_carrier_indices", l);
    }
    {
        auto [v, l] = get("sigma2_d");
        c.sigma2_d = parse_real(v, "sigma2_d", l);
    }
    {
        auto [v, l] = get("sigma2_n");
        c.sigma2_n = parse_real(v, "sigma2_n", l);
    }
    {
        auto [v, l] = get("uw_energy_fraction");
        c.uw_energy_fraction = parse_real(v, "uw_energy_fraction", l);
    }
    validate(c);
    return c;
}

} // namespace uwofdm
