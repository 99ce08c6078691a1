#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "plcc/errors.hpp"
#include "plcc/marginals.hpp"
#include "plcc/random.hpp"
#include "plcc/vine.hpp"

namespace plcc {

// Tail-space coordinates (Gamma^1, ..., Gamma^d) of one point, in simulation order.
struct GammaPoint {
    std::vector<double> gamma;
};

// Jumps of a d-dimensional pure-jump process on [0, horizon], sorted by time.
// Sizes are stored row-major with one column per dimension label.
struct JumpSeries {
    int dim = 0;
    double horizon = 1.0;
    double truncation = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> times;
    std::vector<double> sizes;

    std::size_t count() const { return times.size(); }
    double size(std::size_t event, int label) const { return sizes[event * dim + (label - 1)]; }
    std::span<const double> row(std::size_t event) const {
        return {sizes.data() + event * dim, static_cast<std::size_t>(dim)};
    }
};

// Events whose sizes exceed a threshold in every dimension of a subset.
struct Observation {
    std::vector<int> labels;            // dimension labels, ascending
    std::vector<std::size_t> events;    // indices into the series
    std::vector<double> sizes;          // row-major, one column per entry of `labels`

    std::size_t count() const { return events.size(); }
    std::span<const double> row(std::size_t r) const { return {sizes.data() + r * labels.size(), labels.size()}; }
};

inline constexpr double kDefaultSafety = 10.0;

// Truncation level tau = safety * max_k U_k(eps). With Gamma^1 restricted to
// [0, tau] every first-dimension jump above eps is generated.
inline double choose_truncation(std::span<const StableParams> margins, double eps, double safety = kDefaultSafety) {
    detail::require(safety >= 1.0, "choose_truncation: safety factor must be at least 1");
    detail::require(eps > 0.0, "choose_truncation: threshold must be positive");
    double tau = 0.0;
    for (const auto& m : margins) tau = std::max(tau, tail_integral(m, eps));
    return safety * tau;
}

// Series representation: Gamma^1 points form a rate-`horizon` Poisson process
// on [0, tau], the remaining coordinates are drawn through the conditional
// inverse chain, and jump times are uniform on [0, horizon].
inline JumpSeries simulate_series(const PairLevyCopula& vine, std::span<const StableParams> margins, double horizon,
                                  double tau, std::uint64_t seed) {
    const int d = vine.dim();
    detail::require(static_cast<int>(margins.size()) == d, "simulate_series: need one margin per dimension");
    detail::require(horizon > 0.0 && tau > 0.0, "simulate_series: horizon and truncation must be positive");
    for (const auto& m : margins) check(m);

    Rng rng(seed);
    const std::size_t n = rng.poisson(horizon * tau);
    std::vector<double> times(n);
    std::vector<double> raw(n * d);
    VineChain chain(vine);
    for (std::size_t e = 0; e < n; ++e) {
        chain.reset();
        const double g0 = tau * rng.uniform();
        times[e] = horizon * rng.uniform();
        chain.push(g0);
        for (int k = 1; k < d; ++k) chain.push(std::clamp(chain.next_inv(rng.uniform()), DBL_MIN, DBL_MAX));
        for (int p = 0; p < d; ++p) {
            const int col = vine.order()[p] - 1;
            // Jumps below the smallest normal double are kept as that value.
            raw[e * d + col] = std::max(inv_tail_integral(margins[col], chain.value(p)), DBL_MIN);
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

    JumpSeries s;
    s.dim = d;
    s.horizon = horizon;
    s.truncation = tau;
    s.seed = seed;
    s.times.reserve(n);
    s.sizes.reserve(n * d);
    for (std::size_t e : idx) {
        s.times.push_back(times[e]);
        s.sizes.insert(s.sizes.end(), raw.begin() + e * d, raw.begin() + (e + 1) * d);
    }
    return s;
}

// Keeps the events with every coordinate in `labels` strictly above eps.
inline Observation observe(const JumpSeries& series, double eps, std::vector<int> labels) {
    detail::require(!labels.empty(), "observe: dimension subset must be nonempty");
    std::sort(labels.begin(), labels.end());
    for (int l : labels) detail::require(l >= 1 && l <= series.dim, "observe: dimension label out of range");
    Observation obs;
    obs.labels = labels;
    for (std::size_t e = 0; e < series.count(); ++e) {
        bool keep = true;
        for (int l : labels) keep = keep && series.size(e, l) > eps;
        if (!keep) continue;
        obs.events.push_back(e);
        for (int l : labels) obs.sizes.push_back(series.size(e, l));
    }
    return obs;
}

// Expected rate of jumps above eps in the dimension at each position that the
// truncation Gamma^1 <= tau loses: mu((tau, inf) x [0, U_j(eps)]) on the
// (first, j) margin. Estimated by importance sampling Gamma^1 from a Pareto
// law with index 1/2 on (tau, inf); entry 0 is exactly zero.
inline std::vector<McEstimate> truncation_loss(const PairLevyCopula& vine, std::span<const StableParams> margins,
                                               double eps, double tau, std::size_t samples, Rng& rng) {
    const int d = vine.dim();
    detail::require(static_cast<int>(margins.size()) == d, "truncation_loss: need one margin per dimension");
    detail::require(samples >= 2, "truncation_loss: need at least two samples");
    constexpr double kappa = 0.5;
    std::vector<double> limit(d);
    for (int p = 0; p < d; ++p) limit[p] = tail_integral(margins[vine.order()[p] - 1], eps);

    std::vector<MeanAccumulator> acc(d);
    VineChain chain(vine);
    for (std::size_t s = 0; s < samples; ++s) {
        const double u = rng.uniform();
        const double z = tau * std::pow(u, -1.0 / kappa);
        const double weight = z / (kappa * u);  // 1 / pareto density at z
        chain.reset();
        chain.push(z);
        for (int k = 1; k < d; ++k) {
            acc[k].add(weight * chain.next_cdf(limit[k]));
            chain.push(std::clamp(chain.next_inv(rng.uniform()), DBL_MIN, DBL_MAX));
        }
    }
    std::vector<McEstimate> out(d);
    for (int k = 1; k < d; ++k) out[k] = acc[k].scaled(1.0);
    return out;
}

}  // namespace plcc
