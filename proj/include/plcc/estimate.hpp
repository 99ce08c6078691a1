#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "plcc/dist_copulas.hpp"
#include "plcc/errors.hpp"
#include "plcc/levy_copulas.hpp"
#include "plcc/marginals.hpp"
#include "plcc/normal.hpp"
#include "plcc/random.hpp"
#include "plcc/simulate.hpp"
#include "plcc/vine.hpp"

namespace plcc {

inline constexpr double kThetaMin = 1e-3;
inline constexpr double kThetaMax = 50.0;
inline constexpr double kRhoBound = 0.999;

// Maximises f on [lo, hi] with Brent's method at the finest tolerance Boost
// allows for double (about 3e-8 relative).
template <typename F>
double maximize_scalar(F&& f, double lo, double hi) {
    std::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi,
                                                         std::numeric_limits<double>::digits / 2, max_iter);
    return r.first;
}

struct EdgeFit {
    int tree = 1;
    int index = 0;
    EdgeLabel label;
    std::string family;
    std::optional<double> param;  // empty when unfitted or when the family has no parameter
    bool fitted = false;
    std::size_t count = 0;
    double loglik = std::numeric_limits<double>::quiet_NaN();
    std::optional<McEstimate> normalizer;
    std::size_t mc_samples = 0;
    bool normalizer_flag = false;  // SE stayed above 1% of the estimate at the sample cap
    std::string note;
};

struct MarginalEstimate {
    int label = 0;
    std::optional<StableParams> params;
    std::size_t count = 0;
    bool clamped = false;
    std::string note;
};

struct EstimationReport {
    std::vector<MarginalEstimate> marginals;
    std::vector<std::vector<EdgeFit>> trees;
    double epsilon = 0.0;
    double horizon = 1.0;
    std::uint64_t seed = 0;
};

struct EstimateOptions {
    std::size_t mc_samples = 100000;
    std::size_t mc_cap = 1600000;  // upper limit when doubling for a noisy normaliser
    double mc_rel_se = 0.01;
    std::uint64_t seed = 0;
};

// Bivariate threshold likelihood of co-jumps (x1, x2), both above eps:
//   -T C(U1(eps), U2(eps)) + sum [log f1(x1) + log f2(x2) + log c(U1(x1), U2(x2))]
inline double pair_loglik(const LevyCopula& edge, const StableParams& m1, const StableParams& m2,
                          std::span<const std::array<double, 2>> obs, double eps, double horizon) {
    detail::check_family(edge);
    double ll = -horizon * detail::lc_value_unchecked(edge, tail_integral(m1, eps), tail_integral(m2, eps));
    for (const auto& x : obs) {
        ll += log_levy_density(m1, x[0]) + log_levy_density(m2, x[1]) +
              detail::lc_log_density_unchecked(edge, tail_integral(m1, x[0]), tail_integral(m2, x[1]));
    }
    return ll;
}

struct Tree1Fit {
    double theta;
    double loglik;
};

inline Tree1Fit fit_tree1_edge(const StableParams& m1, const StableParams& m2,
                               std::span<const std::array<double, 2>> obs, double eps, double horizon) {
    if (obs.size() < 2) throw insufficient_data_error("fit_tree1_edge: need at least 2 co-jumps");
    const auto ll = [&](double theta) { return pair_loglik(ClaytonLevy{theta}, m1, m2, obs, eps, horizon); };
    const double theta = maximize_scalar(ll, kThetaMin, kThetaMax);
    return {theta, ll(theta)};
}

struct HigherLoglik {
    double loglik;
    McEstimate normalizer;
};

// Threshold likelihood of the sub-construction `sub` (dimensions relabelled
// 1..m) from co-jumps above eps in all m dimensions; rows of `obs` follow the
// sub-construction's labels. The normaliser C(U_1(eps), ..., U_m(eps)) is the
// conditional-sampling Monte Carlo estimate driven by `seed`.
inline HigherLoglik higher_loglik(const PairLevyCopula& sub, std::span<const StableParams> margins,
                                  const Observation& obs, double eps, double horizon, std::size_t mc_samples,
                                  std::uint64_t seed) {
    const int m = sub.dim();
    detail::require(static_cast<int>(margins.size()) == m, "higher_loglik: need one margin per dimension");
    std::vector<double> limits(m);
    for (int k = 0; k < m; ++k) limits[k] = tail_integral(margins[k], eps);
    Rng rng(seed);
    const auto lambda = sub.value_mc(limits, mc_samples, rng);
    double ll = -horizon * lambda.value;
    std::vector<double> u(m);
    for (std::size_t r = 0; r < obs.count(); ++r) {
        const auto row = obs.row(r);
        for (int k = 0; k < m; ++k) {
            ll += log_levy_density(margins[k], row[k]);
            u[k] = tail_integral(margins[k], row[k]);
        }
        ll += sub.log_density(u);
    }
    return {ll, lambda};
}

// Likelihood of a sub-construction as a function of the Gaussian parameter of
// its top edge alone. Everything else is frozen: the observations reduce to
// the normal scores of the top edge's two arguments, and the normaliser to the
// top-edge arguments of a fixed set of Monte Carlo draws (common random
// numbers), so the surface is smooth in rho. Agrees with higher_loglik for the
// same seed.
class GaussianTopEdgeProfile {
public:
    GaussianTopEdgeProfile(const PairLevyCopula& sub, std::span<const StableParams> margins, const Observation& obs,
                           double eps, double horizon, std::size_t mc_samples, std::uint64_t seed)
        : horizon_(horizon), samples_(mc_samples) {
        const int m = sub.dim();
        detail::require(m >= 3, "GaussianTopEdgeProfile: top edge must lie in tree 2 or above");
        const auto rest = sub.with_edge(m - 1, 0, IndependenceCopula{});

        std::vector<double> u(m);
        VineChain chain(sub);
        for (std::size_t r = 0; r < obs.count(); ++r) {
            const auto row = obs.row(r);
            for (int k = 0; k < m; ++k) {
                constant_ += log_levy_density(margins[k], row[k]);
                u[k] = tail_integral(margins[k], row[k]);
            }
            constant_ += rest.log_density(u);
            const auto pos = sub.to_positions(u);
            chain.reset();
            for (int p = 0; p + 1 < m; ++p) chain.push(pos[p]);
            const auto args = chain.top_args(pos[m - 1]);
            const double z1 = args.given;
            const double z2 = args.target;
            sum_sq_ += z1 * z1 + z2 * z2;
            sum_cross_ += z1 * z2;
        }
        n_obs_ = static_cast<double>(obs.count());

        std::vector<double> limits(m);
        for (int k = 0; k < m; ++k) limits[k] = tail_integral(margins[k], eps);
        const auto lpos = sub.to_positions(limits);
        first_limit_ = lpos[0];
        Rng rng(seed);
        detail::for_each_mc_draw(sub, lpos, mc_samples, rng, [&](const VineChain& c, bool alive) {
            if (!alive) return;
            const auto args = c.top_args(lpos[m - 1]);
            target_scores_.push_back(args.target);
            given_scores_.push_back(args.given);
        });
    }

    McEstimate normalizer(double rho) const {
        const double s = std::sqrt(1.0 - rho * rho);
        MeanAccumulator acc;
        for (std::size_t i = 0; i < target_scores_.size(); ++i)
            acc.add(norm_cdf((target_scores_[i] - rho * given_scores_[i]) / s));
        acc.add_zeros(samples_ - target_scores_.size());
        return acc.scaled(first_limit_);
    }

    double loglik(double rho) const {
        const double one_m = 1.0 - rho * rho;
        const double dens = -0.5 * n_obs_ * std::log(one_m) - (rho * rho * sum_sq_ - 2.0 * rho * sum_cross_) / (2.0 * one_m);
        return constant_ + dens - horizon_ * normalizer(rho).value;
    }

private:
    double horizon_;
    std::size_t samples_;
    double constant_ = 0.0;
    double n_obs_ = 0.0;
    double sum_sq_ = 0.0;
    double sum_cross_ = 0.0;
    double first_limit_ = 0.0;
    std::vector<double> target_scores_;
    std::vector<double> given_scores_;
};

namespace detail {

// Positions of the sub-construction whose top edge is slot (t, i).
inline std::vector<int> edge_positions(VineKind kind, int t, int i) {
    std::vector<int> pos;
    if (kind == VineKind::D) {
        for (int p = i; p <= i + t; ++p) pos.push_back(p);
    } else {
        for (int p = 0; p < t; ++p) pos.push_back(p);
        pos.push_back(t + i);
    }
    return pos;
}

// Slots (tree, index) of all edges below tree t inside the sub-construction of slot (t, i).
inline std::vector<std::pair<int, int>> prerequisite_slots(VineKind kind, int t, int i) {
    std::vector<std::pair<int, int>> out;
    const auto pos = edge_positions(kind, t, i);
    for (int s = 1; s < t; ++s) {
        if (kind == VineKind::D) {
            for (int j = i; j <= i + t - s; ++j) out.emplace_back(s, j);
        } else {
            for (std::size_t r = s; r < pos.size(); ++r) out.emplace_back(s, pos[r] - s);
        }
    }
    return out;
}

}  // namespace detail

// Tree-by-tree maximum likelihood: margins first, then tree-1 Lévy copulas,
// then each higher tree with everything below it frozen. Family tags come from
// `skeleton`; its parameter values are ignored.
inline EstimationReport sequential_fit(const JumpSeries& series, const VineSpec& skeleton, double eps,
                                       const EstimateOptions& opt = {}) {
    PairLevyCopula vine(skeleton);
    const int d = vine.dim();
    detail::require(series.dim == d, "sequential_fit: series dimension does not match the vine");
    detail::require(eps > 0.0, "sequential_fit: threshold must be positive");
    const double horizon = series.horizon;

    EstimationReport rep;
    rep.epsilon = eps;
    rep.horizon = horizon;
    rep.seed = opt.seed;

    std::vector<StableParams> margins(d);
    for (int l = 1; l <= d; ++l) {
        MarginalEstimate me;
        me.label = l;
        const auto obs = observe(series, eps, {l});
        me.count = obs.count();
        try {
            const auto fit = fit_marginal(obs.sizes, horizon, eps);
            me.params = fit.params;
            me.clamped = fit.clamped;
            margins[l - 1] = fit.params;
        } catch (const std::runtime_error& e) {
            me.note = e.what();
        }
        rep.marginals.push_back(me);
    }
    const auto margin_ok = [&](int label) { return rep.marginals[label - 1].params.has_value(); };

    VineSpec current = vine.spec();
    rep.trees.resize(d - 1);
    for (int t = 1; t < d; ++t) {
        for (int i = 0; i < d - t; ++i) {
            const auto& slot = vine.spec().trees[t - 1][i];
            EdgeFit fit;
            fit.tree = t;
            fit.index = i;
            fit.label = slot.label;
            fit.family = family_name(slot.family);
            const auto pos = detail::edge_positions(vine.kind(), t, i);
            std::vector<int> labels;
            for (int p : pos) labels.push_back(vine.order()[p]);
            const auto obs = observe(series, eps, labels);
            fit.count = obs.count();

            bool ready = true;
            for (int l : labels) ready = ready && margin_ok(l);
            if (!ready) fit.note = "margin unfitted";
            for (const auto& [s, j] : detail::prerequisite_slots(vine.kind(), t, i)) {
                if (ready && !rep.trees[s - 1][j].fitted) {
                    ready = false;
                    fit.note = "prerequisite edge " + rep.trees[s - 1][j].label.str() + " unfitted";
                }
            }
            if (!ready) {
                rep.trees[t - 1].push_back(fit);
                continue;
            }

            if (t == 1) {
                const int a = vine.order()[pos.front()];
                const int b = vine.order()[pos.back()];
                std::vector<std::array<double, 2>> pairs;
                for (std::size_t e : obs.events) pairs.push_back({series.size(e, a), series.size(e, b)});
                try {
                    const auto r = fit_tree1_edge(margins[a - 1], margins[b - 1], pairs, eps, horizon);
                    fit.param = r.theta;
                    fit.loglik = r.loglik;
                    fit.fitted = true;
                    current.trees[0][i].family = ClaytonLevy{r.theta};
                } catch (const insufficient_data_error& e) {
                    fit.note = e.what();
                }
                rep.trees[0].push_back(fit);
                continue;
            }

            const PairLevyCopula sub = PairLevyCopula(current).sub_vine(pos);
            const auto sub_labels = vine.sub_labels(pos);
            std::vector<StableParams> sub_margins;
            for (int l : sub_labels) sub_margins.push_back(margins[l - 1]);
            const std::uint64_t seed = derive_seed(opt.seed, t, i);
            const bool gaussian = std::holds_alternative<GaussianCopula>(slot.family);
            if (gaussian && obs.count() < 2) {
                fit.note = "need at least 2 co-jumps";
                rep.trees[t - 1].push_back(fit);
                continue;
            }

            std::size_t samples = opt.mc_samples;
            if (gaussian) {
                double rho = 0.0;
                while (true) {
                    GaussianTopEdgeProfile profile(sub, sub_margins, obs, eps, horizon, samples, seed);
                    rho = maximize_scalar([&](double r) { return profile.loglik(r); }, -kRhoBound, kRhoBound);
                    const auto lam = profile.normalizer(rho);
                    fit.normalizer = lam;
                    fit.loglik = profile.loglik(rho);
                    if (lam.std_error <= opt.mc_rel_se * lam.value || samples * 2 > opt.mc_cap) {
                        fit.normalizer_flag = lam.std_error > opt.mc_rel_se * lam.value;
                        break;
                    }
                    samples *= 2;
                }
                fit.param = rho;
                current.trees[t - 1][i].family = GaussianCopula{rho};
            } else {
                auto r = higher_loglik(sub, sub_margins, obs, eps, horizon, samples, seed);
                while (r.normalizer.std_error > opt.mc_rel_se * r.normalizer.value && samples * 2 <= opt.mc_cap) {
                    samples *= 2;
                    r = higher_loglik(sub, sub_margins, obs, eps, horizon, samples, seed);
                }
                fit.normalizer_flag = r.normalizer.std_error > opt.mc_rel_se * r.normalizer.value;
                fit.normalizer = r.normalizer;
                fit.loglik = r.loglik;
            }
            fit.mc_samples = samples;
            fit.fitted = true;
            rep.trees[t - 1].push_back(fit);
        }
    }
    return rep;
}

}  // namespace plcc
