#include "qcp/cli/experiments.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <omp.h>
#include <unistd.h>

#include "json.hpp"
#include "qcp/global_strategies.hpp"
#include "qcp/gram_spectrum.hpp"

namespace qcp::cli {

namespace {

using Json = nlohmann::ordered_json;

// A JSON number carrying exactly the digits of format_number.
Json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return std::strtod(format_number(value).c_str(), nullptr);
}

Json json_optional(const std::optional<double>& value) {
    return value ? json_number(*value) : Json(nullptr);
}

std::string csv_optional(const std::optional<double>& value) { return value ? format_number(*value) : std::string(); }

int thread_count(const CommonOptions& common) { return common.threads > 0 ? common.threads : omp_get_max_threads(); }

SweepRecord global_quantities(int n, double c2, const SweepConfig& cfg) {
    const Overlap c = Overlap::from_c2(c2);
    const auto hypotheses = cfg.no_change ? ChangeHypotheses::with_no_change : ChangeHypotheses::change_only;
    const GramMatrix gram = build_gram(n, c, hypotheses);
    const PriorDistribution priors = PriorDistribution::uniform(gram.n);
    const WeightedGram w = weighted_gram(gram, priors);
    const PovmSolverResult opt = optimal_povm_fixed_point(embed_states(gram), priors, cfg.tol, cfg.max_iter);

    SweepRecord rec;
    rec.n = n;
    rec.c2 = c2;
    rec.lower_bound = success_lower_bound(w);
    rec.srm = srm_success(w);
    rec.fixed_point_opt = opt.success_probability;
    rec.upper_bound = success_upper_bound(w);
    rec.asymptotic = asymptotic_pmax(c.c());
    if (!cfg.no_change) rec.basic_local = basic_local_closed_form(n, c);
    return rec;
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    struct Point {
        int n;
        double c2;
    };
    std::vector<Point> points;
    for (int n : cfg.n) {
        for (double c2 : cfg.c2) points.push_back({n, c2});
    }
    if (points.empty()) throw ConfigError("empty sweep grid");

    std::vector<SweepRecord> records(points.size());
    std::vector<std::exception_ptr> failures(points.size());
    const int count = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(cfg.common))
    for (int i = 0; i < count; ++i) {
        try {
            records[i] = global_quantities(points[i].n, points[i].c2, cfg);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (int i = 0; i < count; ++i) {
        if (!failures[i]) continue;
        const std::string where =
            "grid point n=" + std::to_string(points[i].n) + " c2=" + format_number(points[i].c2) + ": ";
        try {
            std::rethrow_exception(failures[i]);
        } catch (const SpectralFailure& e) {
            throw SpectralFailure(where + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(where + e.what());
        }
    }

    if (cfg.trials > 0 && !cfg.no_change) {
        for (SweepRecord& rec : records) {
            const MonteCarloResult mc = monte_carlo(Strategy::greedy, rec.n, Overlap::from_c2(rec.c2), cfg.trials,
                                                    cfg.common.seed, {cfg.common.threads, false});
            rec.greedy_estimate = mc.estimate;
            rec.greedy_stderr = mc.std_error;
        }
    }
    return records;
}

SpectrumDump run_spectrum_dump(const SpectrumConfig& cfg) {
    const Overlap c = Overlap::from_c2(cfg.c2);
    const GramSpectrum spectrum = solve_spectrum(cfg.n, c);
    const SqrtGram root = sqrt_gram(spectrum);
    const double gamma = trace_limit(c);

    SpectrumDump dump;
    for (int l = 0; l < cfg.n; ++l) dump.eigen.push_back({l + 1, spectrum.thetas[l], spectrum.lambdas[l]});
    for (int k = 1; k <= cfg.k_max; ++k) {
        const double diag = root.diag(k - 1);
        dump.diag.push_back({k, diag, gamma, diag - gamma, diag_deviation_asymptotic(k, c)});
    }
    return dump;
}

MonteCarloRun run_montecarlo(const MonteCarloConfig& cfg) {
    MonteCarloRun run;
    std::ostringstream dump;
    const bool keep = !cfg.dump.empty();
    for (Strategy strategy : cfg.strategies) {
        for (int n : cfg.n) {
            for (double c2 : cfg.c2) {
                const MonteCarloResult mc = monte_carlo(strategy, n, Overlap::from_c2(c2), cfg.trials,
                                                        cfg.common.seed, {cfg.common.threads, keep});
                run.rows.push_back({strategy, n, c2, mc.trials, mc.estimate, mc.std_error, mc.base_seed});
                for (std::size_t t = 0; t < mc.records.size(); ++t) {
                    const TrialRecord& rec = mc.records[t];
                    Json line;
                    line["strategy"] = to_string(strategy);
                    line["n"] = n;
                    line["c2"] = json_number(c2);
                    line["trial"] = t;
                    line["true_k"] = rec.true_k;
                    line["guess"] = rec.guess;
                    line["outcomes"] = rec.outcomes;
                    line["success"] = rec.success;
                    line["seed"] = rec.seed;
                    dump << line.dump() << '\n';
                }
            }
        }
    }
    run.trial_dump = dump.str();
    return run;
}

std::string render_sweep(const std::vector<SweepRecord>& records, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "n,c2,lower_bound,srm,fixed_point_opt,upper_bound,asymptotic,basic_local,greedy_estimate,greedy_stderr\n";
        for (const SweepRecord& r : records) {
            os << r.n << ',' << format_number(r.c2) << ',' << format_number(r.lower_bound) << ','
               << format_number(r.srm) << ',' << format_number(r.fixed_point_opt) << ','
               << format_number(r.upper_bound) << ',' << format_number(r.asymptotic) << ','
               << csv_optional(r.basic_local) << ',' << csv_optional(r.greedy_estimate) << ','
               << csv_optional(r.greedy_stderr) << '\n';
        }
        return os.str();
    }
    for (const SweepRecord& r : records) {
        Json line;
        line["n"] = r.n;
        line["c2"] = json_number(r.c2);
        line["lower_bound"] = json_number(r.lower_bound);
        line["srm"] = json_number(r.srm);
        line["fixed_point_opt"] = json_number(r.fixed_point_opt);
        line["upper_bound"] = json_number(r.upper_bound);
        line["asymptotic"] = json_number(r.asymptotic);
        line["basic_local"] = json_optional(r.basic_local);
        line["greedy_estimate"] = json_optional(r.greedy_estimate);
        line["greedy_stderr"] = json_optional(r.greedy_stderr);
        os << line.dump() << '\n';
    }
    return os.str();
}

std::string render_spectrum(const SpectrumDump& dump, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "l,theta,lambda\n";
        for (const EigenRow& r : dump.eigen) {
            os << r.l << ',' << format_number(r.theta) << ',' << format_number(r.lambda) << '\n';
        }
        os << "\nk,sqrtG_kk,gamma,deviation_numeric,deviation_asymptotic\n";
        for (const DiagRow& r : dump.diag) {
            os << r.k << ',' << format_number(r.sqrt_g_kk) << ',' << format_number(r.gamma) << ','
               << format_number(r.deviation_numeric) << ',' << format_number(r.deviation_asymptotic) << '\n';
        }
        return os.str();
    }
    for (const EigenRow& r : dump.eigen) {
        Json line;
        line["table"] = "eigen";
        line["l"] = r.l;
        line["theta"] = json_number(r.theta);
        line["lambda"] = json_number(r.lambda);
        os << line.dump() << '\n';
    }
    for (const DiagRow& r : dump.diag) {
        Json line;
        line["table"] = "diag";
        line["k"] = r.k;
        line["sqrtG_kk"] = json_number(r.sqrt_g_kk);
        line["gamma"] = json_number(r.gamma);
        line["deviation_numeric"] = json_number(r.deviation_numeric);
        line["deviation_asymptotic"] = json_number(r.deviation_asymptotic);
        os << line.dump() << '\n';
    }
    return os.str();
}

std::string render_montecarlo(const std::vector<MonteCarloRow>& rows, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::csv) {
        os << "strategy,n,c2,trials,estimate,std_error,base_seed\n";
        for (const MonteCarloRow& r : rows) {
            os << to_string(r.strategy) << ',' << r.n << ',' << format_number(r.c2) << ',' << r.trials << ','
               << format_number(r.estimate) << ',' << format_number(r.std_error) << ',' << r.base_seed << '\n';
        }
        return os.str();
    }
    for (const MonteCarloRow& r : rows) {
        Json line;
        line["strategy"] = to_string(r.strategy);
        line["n"] = r.n;
        line["c2"] = json_number(r.c2);
        line["trials"] = r.trials;
        line["estimate"] = json_number(r.estimate);
        line["std_error"] = json_number(r.std_error);
        line["base_seed"] = r.base_seed;
        os << line.dump() << '\n';
    }
    return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + temp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(temp, ignored);
            throw std::runtime_error("failed writing '" + temp.string() + "'");
        }
    }
    fs::rename(temp, target);
}

int run_subcommand(const std::string& name, const KeyValues& kv, std::ostream& out_stream, std::ostream& err) {
    try {
        std::string rendered;
        CommonOptions common;
        std::string dump_path;
        std::string dump_content;
        if (name == "sweep") {
            const SweepConfig cfg = parse_sweep_config(kv);
            common = cfg.common;
            rendered = render_sweep(run_sweep(cfg), cfg.common.format);
        } else if (name == "spectrum") {
            const SpectrumConfig cfg = parse_spectrum_config(kv);
            common = cfg.common;
            rendered = render_spectrum(run_spectrum_dump(cfg), cfg.common.format);
        } else if (name == "montecarlo") {
            const MonteCarloConfig cfg = parse_montecarlo_config(kv);
            common = cfg.common;
            MonteCarloRun run = run_montecarlo(cfg);
            rendered = render_montecarlo(run.rows, cfg.common.format);
            dump_path = cfg.dump;
            dump_content = std::move(run.trial_dump);
        } else {
            throw ConfigError("unknown subcommand '" + name + "'");
        }

        if (common.out.empty()) {
            out_stream << rendered;
        } else {
            write_atomically(common.out, rendered);
        }
        if (!dump_path.empty()) write_atomically(dump_path, dump_content);
        return 0;
    } catch (const ConfigError& e) {
        err << "error: invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const SpectralFailure& e) {
        err << "error: spectral failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qcp::cli
