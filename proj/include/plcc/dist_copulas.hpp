#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "plcc/errors.hpp"
#include "plcc/normal.hpp"

namespace plcc {

struct GaussianCopula {
    double rho = 0.0;

    bool valid() const { return rho > -1.0 && rho < 1.0; }
};

struct IndependenceCopula {
    bool valid() const { return true; }
};

// Bivariate distributional copula used on edges of tree 2 and above.
// Both shipped families are exchangeable, so edge orientation is immaterial.
using DistCopula = std::variant<GaussianCopula, IndependenceCopula>;

inline std::string family_name(const GaussianCopula&) { return "gaussian"; }
inline std::string family_name(const IndependenceCopula&) { return "independence"; }

inline bool is_valid(const DistCopula& fam) {
    return std::visit([](const auto& c) { return c.valid(); }, fam);
}

namespace detail {

// Probabilities entering the vine recursions are pulled off {0, 1} so that
// normal scores stay finite.
inline constexpr double kProbFloor = 1e-300;
inline constexpr double kProbCeil = 1.0 - 0x1p-53;

inline double clamp_prob(double u) { return std::clamp(u, kProbFloor, kProbCeil); }

inline double gauss_h(double rho, double u, double v) {
    const double x = ppnd16(clamp_prob(u));
    const double y = ppnd16(clamp_prob(v));
    return norm_cdf((x - rho * y) / std::sqrt(1.0 - rho * rho));
}

inline double gauss_h_inv(double rho, double w, double v) {
    const double z = ppnd16(clamp_prob(w));
    const double y = ppnd16(clamp_prob(v));
    return norm_cdf(z * std::sqrt(1.0 - rho * rho) + rho * y);
}

inline double gauss_log_density_scores(double rho, double x, double y) {
    const double one_m = 1.0 - rho * rho;
    return -0.5 * std::log(one_m) - (rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * one_m);
}

// Unchecked h-function, inverse and log-density for use inside the vine.
inline double h_unchecked(const DistCopula& fam, double u, double v) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) return gauss_h(g->rho, u, v);
    return u;
}

inline double h_inv_unchecked(const DistCopula& fam, double w, double v) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) return gauss_h_inv(g->rho, w, v);
    return w;
}

inline double log_density_unchecked(const DistCopula& fam, double u, double v) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) {
        return gauss_log_density_scores(g->rho, ppnd16(clamp_prob(u)), ppnd16(clamp_prob(v)));
    }
    return 0.0;
}

// The same operations on normal scores x = Phi^-1(u), y = Phi^-1(v). The vine
// recursions run on scores so that conditional values deep in either tail keep
// their precision; for the Gaussian family these maps are affine.
inline double h_score_unchecked(const DistCopula& fam, double x, double y) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) return (x - g->rho * y) / std::sqrt(1.0 - g->rho * g->rho);
    return x;
}

inline double h_inv_score_unchecked(const DistCopula& fam, double z, double y) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) return z * std::sqrt(1.0 - g->rho * g->rho) + g->rho * y;
    return z;
}

inline double log_density_score_unchecked(const DistCopula& fam, double x, double y) {
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) return gauss_log_density_scores(g->rho, x, y);
    return 0.0;
}

inline void check_family(const DistCopula& fam) {
    if (!is_valid(fam)) throw domain_error("Gaussian copula requires -1 < rho < 1");
}

}  // namespace detail

inline double copula_cdf(const DistCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0, "copula_cdf: arguments must lie in [0, 1]");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    if (const auto* g = std::get_if<GaussianCopula>(&fam)) {
        return bivar_norm_cdf(detail::ppnd16(u), detail::ppnd16(v), g->rho);
    }
    return u * v;
}

inline double copula_log_density(const DistCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0, "copula_density: arguments must lie in (0, 1)");
    return detail::log_density_unchecked(fam, u, v);
}

inline double copula_density(const DistCopula& fam, double u, double v) {
    return std::exp(copula_log_density(fam, u, v));
}

// h(u | v) = dC(u, v) / dv
inline double h_func(const DistCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u >= 0.0 && u <= 1.0, "h_func: u must lie in [0, 1]");
    detail::require(v > 0.0 && v < 1.0, "h_func: conditioning value must lie in (0, 1)");
    if (u == 0.0 || u == 1.0) return u;
    return detail::h_unchecked(fam, u, v);
}

// Solves h(u | v) = w for u.
inline double h_inv(const DistCopula& fam, double w, double v) {
    detail::check_family(fam);
    detail::require(w > 0.0 && w < 1.0, "h_inv: probability must lie in (0, 1)");
    detail::require(v > 0.0 && v < 1.0, "h_inv: conditioning value must lie in (0, 1)");
    return detail::h_inv_unchecked(fam, w, v);
}

}  // namespace plcc
