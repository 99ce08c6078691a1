#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "plcc/simulate.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace plcc;

namespace {

const StableParams kMargin{0.5, 1.0};

std::vector<StableParams> margins(int d) { return std::vector<StableParams>(d, kMargin); }

PairLevyCopula high_dep(int d) { return PairLevyCopula(make_uniform_vine(VineKind::D, d, ClaytonLevy{5.0}, GaussianCopula{0.8})); }

PairLevyCopula pair(double theta) { return PairLevyCopula(make_vine(VineKind::D, {1, 2}, {ClaytonLevy{theta}}, {})); }

// Kolmogorov distribution: P(sqrt(n) D > 1.9495) = 0.001 asymptotically.
constexpr double kKsCritical = 1.9495;

// z beyond which a two-sided test rejects at 0.1%
constexpr double kZCritical = 3.2905;

}  // namespace

TEST_CASE("truncation level", "[simulate]") {
    const auto m = margins(3);
    CHECK_THAT(choose_truncation(m, 1e-6, 10.0), WithinRel(1e4, 1e-13));
    CHECK_THAT(choose_truncation(m, 1e-4, 1.0), WithinRel(100.0, 1e-13));
    const std::vector<StableParams> mixed{{0.5, 1.0}, {0.5, 3.0}};
    CHECK_THAT(choose_truncation(mixed, 1e-4, 2.0), WithinRel(600.0, 1e-13));
    CHECK_THROWS_AS(choose_truncation(m, 1e-6, 0.5), plcc::domain_error);
    CHECK_THROWS_AS(choose_truncation(m, 0.0, 10.0), plcc::domain_error);
}

TEST_CASE("series structure", "[simulate]") {
    const auto v = high_dep(4);
    const auto m = margins(4);
    const double tau = 500.0;
    const auto s = simulate_series(v, m, 2.5, tau, 11);
    CHECK(s.dim == 4);
    CHECK(s.horizon == 2.5);
    CHECK(s.truncation == tau);
    CHECK(s.seed == 11);
    REQUIRE(s.count() > 0);
    CHECK(s.sizes.size() == 4 * s.count());
    CHECK(std::is_sorted(s.times.begin(), s.times.end()));
    const double floor = inv_tail_integral(kMargin, tau);
    for (std::size_t e = 0; e < s.count(); ++e) {
        CHECK(s.times[e] >= 0.0);
        CHECK(s.times[e] <= 2.5);
        for (double x : s.row(e)) CHECK(x > 0.0);
        // the first simulated coordinate has Gamma <= tau
        CHECK(s.size(e, v.order()[0]) >= floor * (1.0 - 1e-12));
    }
}

TEST_CASE("simulation argument checks", "[simulate]") {
    const auto v = high_dep(3);
    CHECK_THROWS_AS(simulate_series(v, margins(2), 1.0, 10.0, 1), plcc::domain_error);
    CHECK_THROWS_AS(simulate_series(v, margins(3), 0.0, 10.0, 1), plcc::domain_error);
    CHECK_THROWS_AS(simulate_series(v, margins(3), 1.0, -1.0, 1), plcc::domain_error);
    CHECK_THROWS_AS(simulate_series(v, std::vector<StableParams>{{0.5, 1.0}, {1.5, 1.0}, {0.5, 1.0}}, 1.0, 10.0, 1),
                    plcc::domain_error);
}

TEST_CASE("event count is Poisson with mean horizon times tau", "[simulate][property]") {
    const auto v = high_dep(3);
    const auto m = margins(3);
    const int reps = 200;
    const double mean = 2.0 * 1000.0;
    double total = 0.0;
    double chi2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double n = static_cast<double>(simulate_series(v, m, 2.0, 1000.0, derive_seed(5, r)).count());
        total += n;
        chi2 += (n - mean) * (n - mean) / mean;
    }
    CHECK(std::fabs(total - reps * mean) / std::sqrt(reps * mean) < kZCritical);
    // dispersion: chi-square with reps - 1 degrees of freedom, normal approximation
    CHECK(std::fabs(chi2 - (reps - 1)) / std::sqrt(2.0 * (reps - 1)) < kZCritical);
}

TEST_CASE("marginal counts and sizes above the threshold", "[simulate][property]") {
    const int d = 5;
    const auto v = high_dep(d);
    const auto m = margins(d);
    const double eps = 1e-4;
    const double tau = choose_truncation(m, eps);
    const int reps = 200;

    // jumps lost to truncation in the non-root dimensions, subtracted from the Poisson mean
    Rng lrng(99);
    const auto loss = truncation_loss(v, m, eps, tau, 200000, lrng);

    std::vector<double> totals(d, 0.0);
    std::vector<std::vector<double>> pooled(d);
    for (int r = 0; r < reps; ++r) {
        const auto s = simulate_series(v, m, 1.0, tau, derive_seed(7, r));
        for (int label = 1; label <= d; ++label) {
            const auto obs = observe(s, eps, {label});
            totals[label - 1] += static_cast<double>(obs.count());
            pooled[label - 1].insert(pooled[label - 1].end(), obs.sizes.begin(), obs.sizes.end());
        }
    }
    for (int p = 0; p < d; ++p) {
        const int label = v.order()[p];
        const double mean = reps * (tail_integral(m[label - 1], eps) - loss[p].value);
        INFO("dimension " << label);
        CHECK(std::fabs(totals[label - 1] - mean) / std::sqrt(mean) < kZCritical);

        // sizes above eps are Pareto: P(X <= x) = 1 - (x / eps)^-alpha
        auto& xs = pooled[label - 1];
        std::sort(xs.begin(), xs.end());
        const double n = static_cast<double>(xs.size());
        double dmax = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double f = 1.0 - std::pow(xs[i] / eps, -kMargin.alpha);
            dmax = std::max({dmax, f - i / n, (i + 1) / n - f});
        }
        CHECK(std::sqrt(n) * dmax < kKsCritical);
    }
}

TEST_CASE("pairwise co-jump rates match the Levy copula", "[simulate][property]") {
    const double eps = 1e-4;
    const auto m = margins(2);
    const double u = tail_integral(kMargin, eps);
    for (double theta : {1.0, 2.0, 5.0}) {
        const auto v = pair(theta);
        const int reps = 200;
        double total = 0.0;
        for (int r = 0; r < reps; ++r) {
            // co-jumps above eps need Gamma^1 <= U(eps), so safety 1 loses nothing
            const auto s = simulate_series(v, m, 1.0, choose_truncation(m, eps, 1.0), derive_seed(3, r, theta));
            total += static_cast<double>(observe(s, eps, {1, 2}).count());
        }
        const double rate = lc_value(ClaytonLevy{theta}, u, u);
        INFO("theta " << theta);
        CHECK(std::fabs(total / reps - rate) <= 3.0 * std::sqrt(rate / reps));
    }
}

TEST_CASE("co-jump rate of the first pair in a five-dimensional construction", "[simulate][property]") {
    const double eps = 1e-4;
    const auto v = high_dep(5);
    const auto m = margins(5);
    const int reps = 100;
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto s = simulate_series(v, m, 1.0, choose_truncation(m, eps), derive_seed(17, r));
        total += static_cast<double>(observe(s, eps, {1, 2}).count());
    }
    const double rate = lc_value(ClaytonLevy{5.0}, 100.0, 100.0);
    CHECK_THAT(rate, WithinAbs(87.055, 1e-3));
    CHECK(std::fabs(total / reps - rate) <= 3.0 * std::sqrt(rate / reps));
}

TEST_CASE("simulation is deterministic in the seed", "[simulate]") {
    const auto v = high_dep(4);
    const auto m = margins(4);
    const auto a = simulate_series(v, m, 1.0, 300.0, 42);
    const auto b = simulate_series(v, m, 1.0, 300.0, 42);
    const auto c = simulate_series(v, m, 1.0, 300.0, 43);
    CHECK(a.times == b.times);
    CHECK(a.sizes == b.sizes);
    CHECK(a.sizes != c.sizes);
}

TEST_CASE("observation filter", "[simulate][observe]") {
    const auto v = high_dep(3);
    const auto m = margins(3);
    const auto s = simulate_series(v, m, 1.0, 200.0, 8);
    REQUIRE(s.count() > 0);

    const auto all = observe(s, 1e-300, {1});
    CHECK(all.count() == s.count());
    CHECK(observe(s, 1e300, {1, 2, 3}).count() == 0);

    const auto obs = observe(s, 1e-4, {3, 1});
    CHECK(obs.labels == std::vector<int>{1, 3});
    CHECK(obs.sizes.size() == 2 * obs.count());
    std::size_t expected = 0;
    for (std::size_t e = 0; e < s.count(); ++e)
        if (s.size(e, 1) > 1e-4 && s.size(e, 3) > 1e-4) ++expected;
    CHECK(obs.count() == expected);
    for (std::size_t r = 0; r < obs.count(); ++r) {
        CHECK(obs.row(r)[0] == s.size(obs.events[r], 1));
        CHECK(obs.row(r)[1] == s.size(obs.events[r], 3));
        CHECK(obs.row(r)[0] > 1e-4);
        CHECK(obs.row(r)[1] > 1e-4);
    }

    CHECK_THROWS_AS(observe(s, 1e-4, {}), plcc::domain_error);
    CHECK_THROWS_AS(observe(s, 1e-4, {0}), plcc::domain_error);
    CHECK_THROWS_AS(observe(s, 1e-4, {4}), plcc::domain_error);
}

TEST_CASE("lowering the threshold only adds observations", "[simulate][observe][property]") {
    const auto v = high_dep(4);
    const auto m = margins(4);
    const auto s = simulate_series(v, m, 1.0, choose_truncation(m, 1e-4), 21);
    for (const std::vector<int>& dims : {std::vector<int>{1}, std::vector<int>{2, 3}, std::vector<int>{1, 2, 3, 4}}) {
        std::vector<std::size_t> prev;
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const auto obs = observe(s, eps, dims);
            CHECK(std::includes(obs.events.begin(), obs.events.end(), prev.begin(), prev.end()));
            CHECK(obs.count() >= prev.size());
            prev = obs.events;
        }
    }
}

TEST_CASE("truncation loss", "[simulate][truncation]") {
    // theta = 1: lost rate = int_tau^inf (1 + z / U)^-2 dz = U^2 / (U + tau)
    const auto v = pair(1.0);
    const auto m = margins(2);
    const double eps = 1e-4;
    const double u = tail_integral(kMargin, eps);
    for (double safety : {1.0, 10.0, 100.0}) {
        const double tau = safety * u;
        Rng rng(4);
        const auto loss = truncation_loss(v, m, eps, tau, 100000, rng);
        CHECK(loss[0].value == 0.0);
        CHECK(loss[0].std_error == 0.0);
        INFO("safety " << safety);
        CHECK(std::fabs(loss[1].value - u * u / (u + tau)) <= 4.0 * loss[1].std_error);
        CHECK(loss[1].std_error < 0.05 * loss[1].value);
    }

    // strong dependence leaves almost nothing beyond tau
    Rng rng(5);
    const auto high = truncation_loss(high_dep(3), margins(3), eps, choose_truncation(margins(3), eps), 100000, rng);
    CHECK(high[1].value < 1e-3);
    CHECK(high[2].value < 1e-2);
    CHECK_THROWS_AS(truncation_loss(v, margins(3), eps, 100.0, 1000, rng), plcc::domain_error);
}

TEST_CASE("longer horizons scale the jump intensity", "[simulate][property]") {
    const auto v = pair(2.0);
    const auto m = margins(2);
    const double eps = 1e-4;
    const double u = tail_integral(kMargin, eps);
    const int reps = 100;
    double root = 0.0;
    double co = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto s = simulate_series(v, m, 3.0, choose_truncation(m, eps, 1.0), derive_seed(9, r));
        root += static_cast<double>(observe(s, eps, {1}).count());
        co += static_cast<double>(observe(s, eps, {1, 2}).count());
    }
    const double rate = 3.0 * lc_value(ClaytonLevy{2.0}, u, u);
    CHECK(std::fabs(root / reps - 3.0 * u) <= 3.0 * std::sqrt(3.0 * u / reps));
    CHECK(std::fabs(co / reps - rate) <= 3.0 * std::sqrt(rate / reps));
}
