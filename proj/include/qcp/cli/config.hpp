#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcp/online_strategies.hpp"

namespace qcp::cli {

/// Malformed or out-of-range configuration; maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Flat `key = value` text: one pair per line, `#` starts a comment, blank
/// lines ignored. Later duplicates overwrite earlier ones.
KeyValues parse_key_values(std::istream& in, const std::string& origin);
KeyValues load_config_file(const std::string& path);

enum class OutputFormat { csv, jsonl };

struct CommonOptions {
    std::string out;  ///< empty writes to stdout
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 42;
    int threads = 0;
};

struct SweepConfig {
    CommonOptions common;
    std::vector<int> n;
    std::vector<double> c2;
    std::int64_t trials = 0;  ///< greedy Monte Carlo trials per point; 0 leaves the greedy columns empty
    double tol = 1e-10;
    int max_iter = 10000;
    bool no_change = false;
};

struct SpectrumConfig {
    CommonOptions common;
    int n = 30;
    double c2 = 0.25;
    int k_max = 15;
};

struct MonteCarloConfig {
    CommonOptions common;
    std::vector<Strategy> strategies;
    std::vector<int> n;
    std::vector<double> c2;
    std::int64_t trials = 100000;
    std::string dump;  ///< optional JSON-lines file of every TrialRecord
};

SweepConfig parse_sweep_config(const KeyValues& kv);
SpectrumConfig parse_spectrum_config(const KeyValues& kv);
MonteCarloConfig parse_montecarlo_config(const KeyValues& kv);

}  // namespace qcp::cli
