#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "plcc/errors.hpp"

namespace plcc {

// Stable subordinator margin: Levy density alpha*beta*x^(-alpha-1) on (0, inf).
struct StableParams {
    double alpha = 0.5;
    double beta = 1.0;

    bool valid() const { return alpha > 0.0 && alpha < 1.0 && beta > 0.0; }
};

inline void check(const StableParams& p) {
    if (!p.valid()) throw domain_error("stable margin requires 0 < alpha < 1 and beta > 0");
}

inline double levy_density(const StableParams& p, double x) {
    check(p);
    detail::require(x > 0.0, "levy_density: jump size must be positive");
    return p.alpha * p.beta * std::pow(x, -p.alpha - 1.0);
}

inline double log_levy_density(const StableParams& p, double x) {
    check(p);
    detail::require(x > 0.0, "log_levy_density: jump size must be positive");
    return std::log(p.alpha * p.beta) - (p.alpha + 1.0) * std::log(x);
}

// U(x) = nu([x, inf)) = beta * x^(-alpha)
inline double tail_integral(const StableParams& p, double x) {
    check(p);
    detail::require(x > 0.0, "tail_integral: jump size must be positive");
    return p.beta * std::pow(x, -p.alpha);
}

// U^{-1}(u) = (u / beta)^(-1/alpha)
inline double inv_tail_integral(const StableParams& p, double u) {
    check(p);
    detail::require(u > 0.0, "inv_tail_integral: rate must be positive");
    return std::exp(-std::log(u / p.beta) / p.alpha);
}

inline constexpr double kAlphaFloor = 1e-6;
inline constexpr double kAlphaCeil = 1.0 - 1e-6;

struct MarginalFit {
    StableParams params;
    std::size_t count = 0;
    bool clamped = false;  // closed-form alpha left (0, 1) and was pulled back
    double loglik = 0.0;
};

// Compound-Poisson log-likelihood of the jumps above eps observed over [0, T]:
//   -T*beta*eps^(-alpha) + N*log(alpha*beta) - (alpha+1) * sum log x_i
inline double marginal_loglik(const StableParams& p, std::span<const double> sizes,
                              double horizon, double eps) {
    double sum_log = 0.0;
    for (double x : sizes) sum_log += std::log(x);
    const double n = static_cast<double>(sizes.size());
    return -horizon * tail_integral(p, eps) + n * std::log(p.alpha * p.beta) -
           (p.alpha + 1.0) * sum_log;
}

// Closed-form maximiser: alpha = N / sum log(x_i/eps), beta = N eps^alpha / T.
inline MarginalFit fit_marginal(std::span<const double> sizes, double horizon, double eps) {
    detail::require(horizon > 0.0, "fit_marginal: horizon must be positive");
    detail::require(eps > 0.0, "fit_marginal: threshold must be positive");
    if (sizes.size() < 2) throw insufficient_data_error("fit_marginal: need at least 2 jumps above the threshold");

    double sum_log_excess = 0.0;
    for (double x : sizes) {
        detail::require(x >= eps, "fit_marginal: jumps below the threshold");
        sum_log_excess += std::log(x / eps);
    }
    if (!(sum_log_excess > 0.0)) throw degenerate_data_error("fit_marginal: jumps carry no size information");

    MarginalFit fit;
    fit.count = sizes.size();
    const double n = static_cast<double>(sizes.size());
    double alpha = n / sum_log_excess;
    if (alpha < kAlphaFloor || alpha > kAlphaCeil) {
        fit.clamped = true;
        alpha = std::clamp(alpha, kAlphaFloor, kAlphaCeil);
    }
    fit.params = {alpha, n * std::pow(eps, alpha) / horizon};
    fit.loglik = marginal_loglik(fit.params, sizes, horizon, eps);
    return fit;
}

}  // namespace plcc
