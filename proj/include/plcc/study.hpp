#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "plcc/errors.hpp"
#include "plcc/estimate.hpp"
#include "plcc/marginals.hpp"
#include "plcc/random.hpp"
#include "plcc/simulate.hpp"
#include "plcc/vine.hpp"

namespace plcc {

struct Scenario {
    char name = 'H';
    double theta = 5.0;
    double rho = 0.8;
    VineKind kind = VineKind::D;
    int dim = 5;
    StableParams margin{0.5, 1.0};
};

inline Scenario scenario(char name) {
    switch (name) {
    case 'H':
        return {'H', 5.0, 0.8, VineKind::D};
    case 'M':
        return {'M', 2.0, 0.3, VineKind::D};
    case 'L':
        return {'L', 1.0, -0.2, VineKind::C};
    default:
        throw domain_error(std::string("unknown scenario '") + name + "', expected H, M or L");
    }
}

inline VineSpec scenario_vine(const Scenario& s) {
    return make_uniform_vine(s.kind, s.dim, ClaytonLevy{s.theta}, GaussianCopula{s.rho});
}

struct StudyConfig {
    std::optional<char> scenario;
    double epsilon = 1e-6;
    double horizon = 1.0;
    int reps = 100;
    std::uint64_t seed = 0;
    double safety = kDefaultSafety;
    std::size_t mc_samples = 100000;
    std::optional<VineSpec> vine;                  // overrides the scenario construction
    std::optional<std::vector<StableParams>> margins;  // one per dimension label
};

inline void check(const StudyConfig& c) {
    detail::require(c.epsilon > 0.0 && std::isfinite(c.epsilon), "config: epsilon must be positive");
    detail::require(c.horizon > 0.0 && std::isfinite(c.horizon), "config: horizon must be positive");
    detail::require(c.reps >= 1, "config: reps must be at least 1");
    detail::require(c.safety >= 1.0 && std::isfinite(c.safety), "config: safety must be at least 1");
    detail::require(c.mc_samples >= 2, "config: mc_samples must be at least 2");
    detail::require(c.scenario.has_value() || c.vine.has_value(), "config: need a scenario or a vine");
    if (c.scenario) scenario(*c.scenario);
    if (c.vine) {
        auto v = validate(*c.vine);
        if (!v.empty()) throw invalid_vine(std::move(v));
    }
    if (c.margins) {
        const int d = c.vine ? c.vine->dim : scenario(*c.scenario).dim;
        detail::require(static_cast<int>(c.margins->size()) == d, "config: need one margin per dimension");
        for (const auto& m : *c.margins) detail::require(m.valid(), "config: margin parameters out of range");
    }
}

// The construction and margins a configuration describes.
inline VineSpec config_vine(const StudyConfig& c) { return c.vine ? *c.vine : scenario_vine(scenario(*c.scenario)); }

inline std::vector<StableParams> config_margins(const StudyConfig& c) {
    if (c.margins) return *c.margins;
    const int d = c.vine ? c.vine->dim : scenario(*c.scenario).dim;
    return std::vector<StableParams>(d, c.scenario ? scenario(*c.scenario).margin : StableParams{});
}

// True parameter of each edge in slot order; NaN for parameter-free families.
inline std::vector<std::vector<double>> true_params(const PairLevyCopula& vine) {
    std::vector<std::vector<double>> out(vine.dim() - 1);
    for (int t = 1; t < vine.dim(); ++t) {
        for (int i = 0; i < vine.dim() - t; ++i) {
            const auto& f = vine.edge_family(t, i);
            double p = std::numeric_limits<double>::quiet_NaN();
            if (const auto* c = std::get_if<ClaytonLevy>(&f)) p = c->theta;
            if (const auto* g = std::get_if<GaussianCopula>(&f)) p = g->rho;
            out[t - 1].push_back(p);
        }
    }
    return out;
}

inline std::uint64_t replicate_seed(std::uint64_t master, int rep, int stream) {
    return derive_seed(master, static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(stream));
}

// Simulates replicate `rep` of a configuration and fits it.
inline EstimationReport run_replicate(const StudyConfig& c, int rep) {
    const VineSpec spec = config_vine(c);
    const PairLevyCopula vine(spec);
    const auto margins = config_margins(c);
    const double tau = choose_truncation(margins, c.epsilon, c.safety);
    const auto series = simulate_series(vine, margins, c.horizon, tau, replicate_seed(c.seed, rep, 0));
    EstimateOptions opt;
    opt.mc_samples = c.mc_samples;
    opt.mc_cap = c.mc_samples * 16;
    opt.seed = replicate_seed(c.seed, rep, 1);
    return sequential_fit(series, spec, c.epsilon, opt);
}

struct TreeSummary {
    int tree = 1;
    double jumps = 0.0;       // mean observation count per edge
    double true_value = 0.0;
    double mean = 0.0;
    double bias = 0.0;
    double rmse = 0.0;
    std::size_t estimates = 0;  // fitted edge estimates pooled into the moments
    std::size_t unfitted = 0;
};

struct StudyResult {
    StudyConfig config;
    std::vector<EstimationReport> replicates;  // index = replicate number
    std::vector<TreeSummary> trees;
    // per dimension label: expected fraction of jumps above eps lost to the truncation
    std::vector<double> truncation_loss;
};

inline constexpr std::size_t kTruncationSamples = 100000;

// Truncation diagnostic of a configuration, indexed by dimension label.
inline std::vector<double> lost_fraction(const StudyConfig& c) {
    const PairLevyCopula vine(config_vine(c));
    const auto margins = config_margins(c);
    Rng rng(derive_seed(c.seed, std::uint64_t{0xD1A6}));
    const double tau = choose_truncation(margins, c.epsilon, c.safety);
    const auto loss = truncation_loss(vine, margins, c.epsilon, tau, kTruncationSamples, rng);
    std::vector<double> out(vine.dim());
    for (int p = 0; p < vine.dim(); ++p) {
        const int label = vine.order()[p];
        out[label - 1] = loss[p].value / tail_integral(margins[label - 1], c.epsilon);
    }
    return out;
}

// Pools the edges of each tree over replicates. Trees whose edges have
// different true values report the mean true value and errors measured
// against each edge's own truth.
inline std::vector<TreeSummary> summarize(const PairLevyCopula& vine, const std::vector<EstimationReport>& reps) {
    const auto truth = true_params(vine);
    std::vector<TreeSummary> out;
    for (int t = 1; t < vine.dim(); ++t) {
        TreeSummary s;
        s.tree = t;
        double count_sum = 0.0;
        double truth_sum = 0.0;
        double est_sum = 0.0;
        double err_sum = 0.0;
        double sq_sum = 0.0;
        std::size_t cells = 0;
        for (const auto& r : reps) {
            for (const auto& e : r.trees[t - 1]) {
                count_sum += static_cast<double>(e.count);
                ++cells;
                const double tv = truth[t - 1][e.index];
                truth_sum += tv;
                if (!e.fitted || !e.param) {
                    if (!e.fitted) ++s.unfitted;
                    continue;
                }
                est_sum += *e.param;
                err_sum += *e.param - tv;
                sq_sum += (*e.param - tv) * (*e.param - tv);
                ++s.estimates;
            }
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.jumps = cells ? count_sum / static_cast<double>(cells) : nan;
        s.true_value = cells ? truth_sum / static_cast<double>(cells) : nan;
        const double n = static_cast<double>(s.estimates);
        s.mean = s.estimates ? est_sum / n : nan;
        s.bias = s.estimates ? err_sum / n : nan;
        s.rmse = s.estimates ? std::sqrt(sq_sum / n) : nan;
        out.push_back(s);
    }
    return out;
}

// Runs all replicates on `threads` workers. Each replicate draws from its own
// substream and results are aggregated in replicate order, so the output does
// not depend on the thread count.
inline StudyResult run_study(const StudyConfig& c, unsigned threads = 1) {
    check(c);
    const PairLevyCopula vine(config_vine(c));
    StudyResult res;
    res.config = c;
    res.replicates.resize(c.reps);
    threads = std::clamp(threads, 1u, static_cast<unsigned>(c.reps));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (int r = next++; r < c.reps; r = next++) {
            try {
                res.replicates[r] = run_replicate(c, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = c.reps;
            }
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    res.trees = summarize(vine, res.replicates);
    res.truncation_loss = lost_fraction(c);
    return res;
}

}  // namespace plcc
