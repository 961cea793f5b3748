// ukadder: exact moments, growth constants, and path-space ground truth for
// the random doubling recurrence X_{n+1} = X_n + X_{U(n)}.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ulamkac/m3_series.hpp"
#include "ulamkac/pathspace.hpp"
#include "ulamkac/report.hpp"
#include "ulamkac/spectral.hpp"
#include "ulamkac/verify.hpp"

namespace {

using namespace ulamkac;
using nlohmann::json;

long long env_budget(long long fallback) {
    if (const char* raw = std::getenv("UKADDER_BUDGET")) {
        char* end = nullptr;
        const long long parsed = std::strtoll(raw, &end, 10);
        if (end != raw && *end == '\0' && parsed > 0) return parsed;
        std::cerr << "ukadder: ignoring malformed UKADDER_BUDGET='" << raw << "'\n";
    }
    return fallback;
}

void emit(const RunReport& report, const std::string& format, const std::string& out_path) {
    const std::string payload = render(report, format);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + out_path);
        out << payload;
    }
    std::fprintf(stderr, "ukadder %s: %.3f s\n", report.command.c_str(), report.wall_seconds);
}

int checks_exit_code(const RunReport& report) {
    for (const auto& c : report.checks) {
        if (!c.pass) return 1;
    }
    return 0;
}

RunReport cmd_constants(int m_max, double tol) {
    if (m_max < 1 || m_max > 12) {
        throw std::invalid_argument("constants: m must be in 1..12 (the default guard)");
    }
    RunReport report;
    report.command = "constants";
    report.parameters = {{"m_max", m_max}, {"tol", tol}};
    json rows = json::array();
    for (int m = 1; m <= m_max; ++m) {
        auto res = moment_constant(m, tol);
        const double log_c = std::log(res.c);
        const double band_lo = 0.3 * m, band_hi = 0.4 * m + 1.0;
        rows.push_back({m, static_cast<int>(res.M0.size()), res.lambda, res.c, 2 * m, log_c,
                        band_lo, band_hi, log_c >= band_lo && log_c <= band_hi});
        CheckResult check;
        check.name = "bounds-m" + std::to_string(m);
        check.expected = "2m <= c_m and log2(c_m) <= (m/2+1) e^{3 sqrt m}";
        check.observed = "c = " + std::to_string(res.c);
        check.pass = res.bounds_ok;
        report.checks.push_back(std::move(check));
    }
    report.outputs["table"] = {
        {"columns", {"m", "index_count", "lambda", "c", "lower_bound_2m", "log_c",
                     "conjectured_band_lo", "conjectured_band_hi", "log_c_in_band"}},
        {"rows", rows}};
    return report;
}

RunReport cmd_moments(int m, int n_max, long long budget, const std::string& /*format*/) {
    RunReport report;
    report.command = "moments";
    report.parameters = {{"m", m}, {"n", n_max}, {"budget", budget}};
    auto table = exact_moments(m, n_max, budget);
    json rows = json::array();
    for (const auto& [n, value] : table.rows) rows.push_back({n, rat_string(value)});
    report.outputs["table"] = {{"columns", {"n", "moment"}}, {"rows", rows}};
    return report;
}

RunReport cmd_verify(const std::string& level) {
    if (level != "fast" && level != "full") {
        throw std::invalid_argument("verify: level must be 'fast' or 'full'");
    }
    RunReport report;
    report.command = "verify";
    report.parameters = {{"level", level}};
    report.checks = run_acceptance_checks(level == "fast" ? VerifyLevel::fast : VerifyLevel::full);
    int passed = 0;
    for (const auto& c : report.checks) passed += c.pass ? 1 : 0;
    report.outputs["summary"] = {{"passed", passed},
                                 {"failed", static_cast<int>(report.checks.size()) - passed}};
    return report;
}

RunReport cmd_fit(int lo, int hi, unsigned long precision_bits) {
    RunReport report;
    report.command = "fit";
    report.parameters = {{"lo", lo}, {"hi", hi}, {"precision_bits", precision_bits}};
    auto fit = m3_sqrt_slope(lo, hi, precision_bits);
    const std::string method = hi <= 2000 ? "exact-rational" : "bigfloat-series";
    report.outputs["slope"] = fit.slope;
    report.outputs["intercept"] = fit.intercept;
    report.outputs["residual_rms"] = fit.residual_rms;
    report.outputs["method"] = method;
    report.outputs["table"] = {
        {"columns", {"lo", "hi", "slope", "intercept", "residual_rms", "method"}},
        {"rows", {{lo, hi, fit.slope, fit.intercept, fit.residual_rms, method}}}};
    return report;
}

RunReport cmd_simulate(const SimConfig& cfg, bool histogram) {
    SimConfig actual = cfg;
    actual.collect_final_logs = histogram;
    RunReport report;
    report.command = "simulate";
    json orders = json::array();
    for (int m : cfg.moment_orders) orders.push_back(m);
    report.parameters = {{"n", cfg.n_max},     {"samples", cfg.samples}, {"seed", cfg.seed},
                         {"m", orders},        {"streams", cfg.streams}, {"threads", cfg.threads},
                         {"histogram", histogram}};
    auto sim = simulate(actual);
    json rows = json::array();
    for (const auto& row : sim.rows) {
        rows.push_back({row.m, row.n, rat_string(row.mean), row.stddev, row.std_error});
    }
    report.outputs["table"] = {{"columns", {"m", "n", "mean", "stddev", "std_error"}},
                               {"rows", rows}};
    if (histogram) {
        // Standardize ln X_n at n = n_max with sample-fit location/scale;
        // the normalizing constants are estimates, not asserted values.
        if (cfg.n_max < 1) throw std::invalid_argument("simulate: histogram needs n >= 1");
        const auto& logs = sim.final_logs;
        double mean = 0;
        for (double v : logs) mean += v;
        mean /= static_cast<double>(logs.size());
        double var = 0;
        for (double v : logs) var += (v - mean) * (v - mean);
        var /= std::max<double>(1.0, static_cast<double>(logs.size()) - 1);
        const double sqrt_n = std::sqrt(static_cast<double>(cfg.n_max));
        const double quarter_n = std::pow(static_cast<double>(cfg.n_max), 0.25);
        const double mu_hat = mean / sqrt_n;
        const double sigma_hat = std::sqrt(var) / quarter_n;
        const int bins = 40;
        const double lo = -5.0, hi = 5.0;
        std::vector<long long> counts(bins, 0);
        long long outside = 0;
        for (double v : logs) {
            const double t = (v - mu_hat * sqrt_n) / (sigma_hat * quarter_n);
            if (t < lo || t >= hi) {
                ++outside;
                continue;
            }
            ++counts[static_cast<int>((t - lo) / (hi - lo) * bins)];
        }
        json hist_rows = json::array();
        for (int b = 0; b < bins; ++b) {
            const double bin_lo = lo + (hi - lo) * b / bins;
            hist_rows.push_back({bin_lo, bin_lo + (hi - lo) / bins, counts[b]});
        }
        report.outputs["histogram"] = {{"normalization", "sample-fit"},
                                       {"mu_hat", mu_hat},
                                       {"sigma_hat", sigma_hat},
                                       {"outside", outside},
                                       {"columns", {"bin_lo", "bin_hi", "count"}},
                                       {"rows", hist_rows}};
    }
    return report;
}

RunReport cmd_enumerate(int n, int cap) {
    RunReport report;
    report.command = "enumerate";
    report.parameters = {{"n", n}, {"cap", cap}};
    auto dist = enumerate_distribution(n, cap);
    json rows = json::array();
    Rat total(0);
    for (const auto& [value, p] : dist.pmf) {
        rows.push_back({value, rat_string(p)});
        total += p;
    }
    report.outputs["table"] = {{"columns", {"value", "probability"}}, {"rows", rows}};
    report.outputs["pmf_total"] = rat_string(total);
    return report;
}

RunReport cmd_chains(std::uint64_t target, int extra, std::uint64_t budget) {
    RunReport report;
    report.command = "chains";
    report.parameters = {{"target", target}, {"extra", extra}, {"budget", budget}};
    auto stats = min_star_chain_length(target, extra, budget);
    json rows = json::array();
    for (const auto& [length, count] : stats.count_by_length) rows.push_back({length, count});
    report.outputs["min_length"] = stats.min_length;
    report.outputs["table"] = {{"columns", {"length", "chain_count"}}, {"rows", rows}};
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact moments and growth constants of the random doubling adder"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "Write the payload to a file instead of stdout");
    // subcommands inherit the global options
    app.fallthrough();

    auto* constants = app.add_subcommand("constants", "Growth constants c_m = 2 sqrt(lambda_m)");
    int m_max = 4;
    double tol = 1e-12;
    constants->add_option("--m", m_max, "Largest moment order (1..12)");
    constants->add_option("--tol", tol, "Power iteration tolerance");

    auto* moments = app.add_subcommand("moments", "Exact rational moment table E[X_n^m]");
    int mom_m = 1, mom_n = 10;
    long long budget = env_budget(kDefaultStateBudget);
    moments->add_option("--m", mom_m, "Moment order")->required();
    moments->add_option("--n", mom_n, "Largest step")->required();
    moments->add_option("--budget", budget, "State-update budget (env UKADDER_BUDGET)");

    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    std::string level = "full";
    verify->add_option("--level", level, "fast or full");

    auto* fit = app.add_subcommand("fit", "Least-squares slope of (sqrt n, ln E[X_n^3])");
    int fit_lo = 900, fit_hi = 1000;
    unsigned long precision_bits = 256;
    fit->add_option("--lo", fit_lo, "Window start")->required();
    fit->add_option("--hi", fit_hi, "Window end")->required();
    fit->add_option("--precision-bits", precision_bits, "Big-float precision");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo moment estimates");
    SimConfig sim_cfg;
    bool histogram = false;
    simulate_cmd->add_option("--n", sim_cfg.n_max, "Number of steps")->required();
    simulate_cmd->add_option("--samples", sim_cfg.samples, "Sample count");
    simulate_cmd->add_option("--seed", sim_cfg.seed, "RNG seed");
    simulate_cmd->add_option("--m", sim_cfg.moment_orders, "Moment orders (repeatable)");
    simulate_cmd->add_option("--streams", sim_cfg.streams, "Deterministic sample streams");
    simulate_cmd->add_option("--threads", sim_cfg.threads, "Worker threads");
    simulate_cmd->add_flag("--histogram", histogram, "Emit a standardized ln X_n histogram");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Exact distribution of X_n");
    int enum_n = 3, enum_cap = kDefaultEnumerationCap;
    enumerate_cmd->add_option("--n", enum_n, "Step to enumerate")->required();
    enumerate_cmd->add_option("--cap", enum_cap, "Enumeration cap (paths = n!)");

    auto* chains = app.add_subcommand("chains", "Minimal star addition chains");
    std::uint64_t target = 0;
    int extra = 0;
    std::uint64_t chain_budget = kDefaultChainBudget;
    chains->add_option("--target", target, "Chain target")->required();
    chains->add_option("--extra", extra, "Also count chains up to min+extra");
    chains->add_option("--budget", chain_budget, "Largest allowed target");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        RunReport report;
        if (*constants) {
            report = cmd_constants(m_max, tol);
        } else if (*moments) {
            report = cmd_moments(mom_m, mom_n, budget, format);
        } else if (*verify) {
            report = cmd_verify(level);
        } else if (*fit) {
            report = cmd_fit(fit_lo, fit_hi, precision_bits);
        } else if (*simulate_cmd) {
            report = cmd_simulate(sim_cfg, histogram);
        } else if (*enumerate_cmd) {
            report = cmd_enumerate(enum_n, enum_cap);
        } else if (*chains) {
            report = cmd_chains(target, extra, chain_budget);
        }
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(report, format, out_path);
        return checks_exit_code(report);
    } catch (const BudgetError& e) {
        std::cerr << "ukadder: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ukadder: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ukadder: " << e.what() << "\n";
        return 1;
    }
}
