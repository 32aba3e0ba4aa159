#include "qcp/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qcp::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + text + "'");
}

void reject_unknown(const KeyValues& kv, const std::set<std::string>& allowed, const char* subcommand) {
    for (const auto& [key, value] : kv) {
        if (!allowed.contains(key)) {
            throw ConfigError(std::string("unknown key '") + key + "' for subcommand " + subcommand);
        }
    }
}

const std::set<std::string> kCommonKeys = {"out", "format", "seed", "threads"};

std::set<std::string> with_common(std::set<std::string> keys) {
    keys.insert(kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

CommonOptions parse_common(const KeyValues& kv) {
    CommonOptions common;
    if (auto it = kv.find("out"); it != kv.end()) common.out = it->second;
    if (auto it = kv.find("format"); it != kv.end()) {
        if (it->second == "csv") {
            common.format = OutputFormat::csv;
        } else if (it->second == "jsonl") {
            common.format = OutputFormat::jsonl;
        } else {
            throw ConfigError("key 'format': expected csv or jsonl, got '" + it->second + "'");
        }
    }
    if (auto it = kv.find("seed"); it != kv.end()) common.seed = parse_number<std::uint64_t>("seed", it->second);
    if (auto it = kv.find("threads"); it != kv.end()) {
        common.threads = parse_number<int>("threads", it->second);
        if (common.threads < 0 || common.threads > 1024) throw ConfigError("key 'threads' must lie in [0, 1024]");
    }
    return common;
}

std::vector<int> parse_sizes(const KeyValues& kv, int max_n) {
    auto it = kv.find("n");
    if (it == kv.end()) throw ConfigError("missing key 'n'");
    std::vector<int> sizes;
    for (const std::string& item : split_list(it->second)) {
        const int n = parse_number<int>("n", item);
        if (n < 1 || n > max_n) {
            throw ConfigError("key 'n': value " + item + " outside [1, " + std::to_string(max_n) + "]");
        }
        sizes.push_back(n);
    }
    if (sizes.empty()) throw ConfigError("key 'n': empty grid");
    return sizes;
}

void check_c2(double c2) {
    if (!(c2 >= 0.0 && c2 < 1.0)) throw ConfigError("c2 value " + std::to_string(c2) + " outside [0, 1)");
}

// Either an explicit list `c2 = a, b, ...` or `c2_start`, `c2_stop`, `c2_count`
// (inclusive endpoints).
std::vector<double> parse_c2_grid(const KeyValues& kv) {
    const bool has_list = kv.contains("c2");
    const bool has_range = kv.contains("c2_start") || kv.contains("c2_stop") || kv.contains("c2_count");
    if (has_list && has_range) throw ConfigError("give either 'c2' or 'c2_start/c2_stop/c2_count', not both");
    std::vector<double> grid;
    if (has_list) {
        for (const std::string& item : split_list(kv.at("c2"))) grid.push_back(parse_number<double>("c2", item));
    } else if (has_range) {
        if (!kv.contains("c2_start") || !kv.contains("c2_stop") || !kv.contains("c2_count")) {
            throw ConfigError("c2 range needs all of c2_start, c2_stop and c2_count");
        }
        const double start = parse_number<double>("c2_start", kv.at("c2_start"));
        const double stop = parse_number<double>("c2_stop", kv.at("c2_stop"));
        const int count = parse_number<int>("c2_count", kv.at("c2_count"));
        if (count < 0) throw ConfigError("key 'c2_count' must be >= 0");
        for (int i = 0; i < count; ++i) {
            grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
        }
    } else {
        throw ConfigError("missing key 'c2' (or c2_start/c2_stop/c2_count)");
    }
    if (grid.empty()) throw ConfigError("empty c2 grid");
    for (double c2 : grid) check_c2(c2);
    return grid;
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& origin) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_key_values(in, path);
}

SweepConfig parse_sweep_config(const KeyValues& kv) {
    reject_unknown(kv, with_common({"n", "c2", "c2_start", "c2_stop", "c2_count", "trials", "tol", "max_iter",
                                    "no_change"}),
                   "sweep");
    SweepConfig cfg;
    cfg.common = parse_common(kv);
    cfg.n = parse_sizes(kv, 2000);
    cfg.c2 = parse_c2_grid(kv);
    if (auto it = kv.find("trials"); it != kv.end()) {
        cfg.trials = parse_number<std::int64_t>("trials", it->second);
        if (cfg.trials < 0) throw ConfigError("key 'trials' must be >= 0");
    }
    if (auto it = kv.find("tol"); it != kv.end()) {
        cfg.tol = parse_number<double>("tol", it->second);
        if (!(cfg.tol > 0.0)) throw ConfigError("key 'tol' must be > 0");
    }
    if (auto it = kv.find("max_iter"); it != kv.end()) {
        cfg.max_iter = parse_number<int>("max_iter", it->second);
        if (cfg.max_iter < 1) throw ConfigError("key 'max_iter' must be >= 1");
    }
    if (auto it = kv.find("no_change"); it != kv.end()) cfg.no_change = parse_bool("no_change", it->second);
    return cfg;
}

SpectrumConfig parse_spectrum_config(const KeyValues& kv) {
    reject_unknown(kv, with_common({"n", "c2", "k_max"}), "spectrum");
    SpectrumConfig cfg;
    cfg.common = parse_common(kv);
    const std::vector<int> sizes = parse_sizes(kv, 10000);
    if (sizes.size() != 1) throw ConfigError("spectrum takes a single n");
    cfg.n = sizes.front();
    const std::vector<double> grid = parse_c2_grid(kv);
    if (grid.size() != 1) throw ConfigError("spectrum takes a single c2");
    cfg.c2 = grid.front();
    cfg.k_max = std::min(15, cfg.n);
    if (auto it = kv.find("k_max"); it != kv.end()) {
        cfg.k_max = parse_number<int>("k_max", it->second);
        if (cfg.k_max < 1 || cfg.k_max > cfg.n) throw ConfigError("key 'k_max' must lie in [1, n]");
    }
    return cfg;
}

MonteCarloConfig parse_montecarlo_config(const KeyValues& kv) {
    reject_unknown(kv, with_common({"strategy", "n", "c2", "c2_start", "c2_stop", "c2_count", "trials", "dump"}),
                   "montecarlo");
    MonteCarloConfig cfg;
    cfg.common = parse_common(kv);
    auto it = kv.find("strategy");
    if (it == kv.end()) throw ConfigError("missing key 'strategy'");
    for (const std::string& name : split_list(it->second)) {
        if (name != "basic" && name != "greedy") {
            throw ConfigError("key 'strategy': expected basic or greedy, got '" + name + "'");
        }
        cfg.strategies.push_back(parse_strategy(name));
    }
    if (cfg.strategies.empty()) throw ConfigError("key 'strategy' is empty");
    cfg.n = parse_sizes(kv, 10000);
    cfg.c2 = parse_c2_grid(kv);
    if (auto t = kv.find("trials"); t != kv.end()) {
        cfg.trials = parse_number<std::int64_t>("trials", t->second);
    }
    if (cfg.trials < 1) throw ConfigError("key 'trials' must be >= 1");
    if (auto d = kv.find("dump"); d != kv.end()) cfg.dump = d->second;
    return cfg;
}

}  // namespace qcp::cli
