#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcp/cli/config.hpp"

namespace qcp::cli {

/// One (n, c^2) grid point. Columns are always emitted in declaration order;
/// absent online estimates serialize as empty fields (CSV) or null (JSONL).
struct SweepRecord {
    int n = 0;
    double c2 = 0.0;
    double lower_bound = 0.0;
    double srm = 0.0;
    double fixed_point_opt = 0.0;
    double upper_bound = 0.0;
    double asymptotic = 0.0;
    std::optional<double> basic_local;
    std::optional<double> greedy_estimate;
    std::optional<double> greedy_stderr;
};

struct EigenRow {
    int l = 0;
    double theta = 0.0;
    double lambda = 0.0;
};

struct DiagRow {
    int k = 0;
    double sqrt_g_kk = 0.0;
    double gamma = 0.0;
    double deviation_numeric = 0.0;
    double deviation_asymptotic = 0.0;
};

struct SpectrumDump {
    std::vector<EigenRow> eigen;
    std::vector<DiagRow> diag;
};

struct MonteCarloRow {
    Strategy strategy = Strategy::basic;
    int n = 0;
    double c2 = 0.0;
    std::int64_t trials = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t base_seed = 0;
};

struct MonteCarloRun {
    std::vector<MonteCarloRow> rows;
    std::string trial_dump;  ///< JSON lines, filled when the config names a dump file
};

/// Shortest round-trip decimal form capped at 12 significant digits.
std::string format_number(double value);

/// Grid points in (n-major, c2-minor) order. Throws SpectralFailure naming the
/// offending point.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);
SpectrumDump run_spectrum_dump(const SpectrumConfig& cfg);
MonteCarloRun run_montecarlo(const MonteCarloConfig& cfg);

std::string render_sweep(const std::vector<SweepRecord>& records, OutputFormat format);
std::string render_spectrum(const SpectrumDump& dump, OutputFormat format);
std::string render_montecarlo(const std::vector<MonteCarloRow>& rows, OutputFormat format);

/// Writes to a sibling temporary file and renames it over `path`, so a failed
/// run never leaves a partial file behind.
void write_atomically(const std::string& path, const std::string& content);

/// Subcommand entry point shared by the executable and the tests. Returns the
/// process exit status: 0 success, 2 invalid configuration, 3 spectral
/// failure, 1 anything else. Diagnostics go to `err`; with an empty `out`
/// option the rendered records go to `out_stream`.
int run_subcommand(const std::string& name, const KeyValues& kv, std::ostream& out_stream, std::ostream& err);

}  // namespace qcp::cli
