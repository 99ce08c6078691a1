#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "plcc/errors.hpp"
#include "plcc/estimate.hpp"
#include "plcc/io.hpp"
#include "plcc/simulate.hpp"
#include "plcc/study.hpp"

namespace plcc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2 };

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> eps;
    std::optional<int> reps;
    std::optional<std::string> scenario;
    std::optional<double> safety;
    std::optional<std::size_t> mc_samples;
};

// Configuration errors are usage errors; everything the caller gets back is validated.
inline StudyConfig load_config(const std::optional<std::string>& path, const Overrides& o) {
    StudyConfig c;
    if (path) {
        std::ifstream in(*path);
        if (!in) throw format_error("cannot open config file " + *path);
        c = read_config(in);
    }
    if (o.scenario) {
        if (o.scenario->size() != 1) throw format_error("scenario must be one of H, M, L");
        c.scenario = (*o.scenario)[0];
    }
    if (o.seed) c.seed = *o.seed;
    if (o.eps) c.epsilon = *o.eps;
    if (o.reps) c.reps = *o.reps;
    if (o.safety) c.safety = *o.safety;
    if (o.mc_samples) c.mc_samples = *o.mc_samples;
    check(c);
    return c;
}

template <typename Write>
void write_output(const std::string& path, Write&& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    write(out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

inline constexpr double kLossWarning = 0.01;

inline void warn_truncation(const std::vector<double>& lost) {
    for (std::size_t k = 0; k < lost.size(); ++k) {
        if (lost[k] > kLossWarning)
            std::cerr << "warning: truncation drops about " << 100.0 * lost[k] << "% of the jumps above eps in x"
                      << k + 1 << "; raise --safety\n";
    }
}

inline int cmd_simulate(const std::optional<std::string>& config, const Overrides& o, const std::string& out) {
    StudyConfig c;
    try {
        c = load_config(config, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    const PairLevyCopula vine(config_vine(c));
    const auto margins = config_margins(c);
    const double tau = choose_truncation(margins, c.epsilon, c.safety);
    const auto series = simulate_series(vine, margins, c.horizon, tau, c.seed);
    warn_truncation(lost_fraction(c));
    write_output(out, [&](std::ostream& os) { write_jumps_csv(os, series); });
    return kOk;
}

inline int cmd_estimate(const std::optional<std::string>& config, const Overrides& o, const std::string& jumps,
                        const std::string& out) {
    StudyConfig c;
    try {
        c = load_config(config, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    const VineSpec skeleton = config_vine(c);
    JumpSeries series;
    try {
        std::ifstream in(jumps);
        if (!in) throw format_error("cannot open jump file " + jumps);
        series = read_jumps_csv(in, c.horizon, skeleton.dim);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    if (series.count() == 0) std::cerr << "warning: no jumps in " << jumps << "; every edge is left unfitted\n";
    EstimateOptions opt;
    opt.mc_samples = c.mc_samples;
    opt.mc_cap = c.mc_samples * 16;
    opt.seed = c.seed;
    const auto report = sequential_fit(series, skeleton, c.epsilon, opt);
    write_output(out, [&](std::ostream& os) { os << to_json(report).dump(2) << '\n'; });
    return kOk;
}

inline std::string estimates_path(const std::string& out) {
    if (out == "-") return "";
    const auto dot = out.rfind('.');
    const auto slash = out.find_last_of('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + "_estimates.csv";
}

inline int cmd_study(const std::optional<std::string>& config, const Overrides& o, const std::string& out,
                     std::optional<std::string> estimates, unsigned threads) {
    StudyConfig c;
    try {
        c = load_config(config, o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    const auto res = run_study(c, threads);
    for (const auto& t : res.trees)
        if (t.unfitted) std::cerr << "warning: tree " << t.tree << ": " << t.unfitted << " edge fits failed\n";
    warn_truncation(res.truncation_loss);
    write_output(out, [&](std::ostream& os) { write_study_table(os, res); });
    const std::string raw = estimates.value_or(estimates_path(out));
    if (!raw.empty()) write_output(raw, [&](std::ostream& os) { write_study_estimates(os, res); });
    return kOk;
}

inline int run(int argc, const char* const* argv) {
    CLI::App app{"Pair Lévy copula constructions: simulation and threshold estimation"};
    app.require_subcommand(1);

    std::optional<std::string> config;
    Overrides o;
    std::string out = "-";
    std::string jumps;
    std::optional<std::string> estimates;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "configuration JSON");
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--eps", o.eps, "observation threshold");
        sub->add_option("--out", out, "output path, - for standard output");
    };

    auto* sim = app.add_subcommand("simulate", "simulate one jump series to CSV");
    add_common(sim);
    sim->add_option("--safety", o.safety, "truncation safety factor");
    sim->add_option("--scenario", o.scenario, "H, M or L");

    auto* est = app.add_subcommand("estimate", "fit a construction to a jump CSV");
    add_common(est);
    est->add_option("jumps", jumps, "jump CSV")->required();
    est->add_option("--mc-samples", o.mc_samples, "Monte Carlo normaliser samples");
    est->add_option("--scenario", o.scenario, "H, M or L");

    auto* stu = app.add_subcommand("study", "replicated simulation and estimation");
    add_common(stu);
    stu->add_option("--scenario", o.scenario, "H, M or L");
    stu->add_option("--reps", o.reps, "number of replicates");
    stu->add_option("--safety", o.safety, "truncation safety factor");
    stu->add_option("--mc-samples", o.mc_samples, "Monte Carlo normaliser samples");
    stu->add_option("--estimates", estimates, "per-edge estimates CSV (default: <out>_estimates.csv)");
    stu->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config, o, out);
        if (est->parsed()) return cmd_estimate(config, o, jumps, out);
        return cmd_study(config, o, out, estimates, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
}

}  // namespace plcc::cli
