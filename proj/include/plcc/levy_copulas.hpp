#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <variant>

#include "plcc/errors.hpp"
#include "plcc/normal.hpp"

namespace plcc {

// Lévy copulas live on [0, inf]^2; the point at infinity is an ordinary value.
inline constexpr double kInfiniteRate = std::numeric_limits<double>::infinity();

// Clayton Lévy copula (u^-theta + v^-theta)^(-1/theta).
struct ClaytonLevy {
    double theta = 1.0;

    bool valid() const { return theta > 0.0 && std::isfinite(theta); }
};

// Family of a tree-1 edge. New families must supply value, conditional,
// conditional inverse and (log-)density below.
using LevyCopula = std::variant<ClaytonLevy>;

inline std::string family_name(const ClaytonLevy&) { return "clayton"; }

inline bool is_valid(const LevyCopula& fam) {
    return std::visit([](const auto& c) { return c.valid(); }, fam);
}

namespace detail {

inline double log_add_exp(double a, double b) {
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log(1 + e^x)
inline double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// log(e^x - 1) for x > 0
inline double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

inline void check_family(const LevyCopula& fam) {
    if (!is_valid(fam)) throw domain_error("Clayton Levy copula requires theta > 0");
}

inline double clayton_value(double theta, double u, double v) {
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == kInfiniteRate) return v;
    if (v == kInfiniteRate) return u;
    return std::exp(-log_add_exp(-theta * std::log(u), -theta * std::log(v)) / theta);
}

// d/du C(u, v) = (1 + (u/v)^theta)^(-(theta+1)/theta)
inline double clayton_conditional(double theta, double u, double v) {
    if (v == 0.0) return 0.0;
    if (v == kInfiniteRate) return 1.0;
    const double r = theta * (std::log(u) - std::log(v));
    return std::exp(-(theta + 1.0) / theta * softplus(r));
}

// (log F, log(1 - F)) of the conditional above for finite positive u, v.
struct LogProbs {
    double lp, lq;
};

inline LogProbs clayton_conditional_logs(double theta, double u, double v) {
    const double c = (theta + 1.0) / theta;
    const double r = theta * (std::log(u) - std::log(v));
    const double lp = -c * softplus(r);
    if (r > -30.0) return {lp, log1mexp(lp)};
    // 1 - F = c e^r (1 - e^r / 2)(1 - c e^r / 2) + O(e^{3r})
    const double e = std::exp(r);
    return {lp, std::log(c) + r + std::log1p(-0.5 * e) + std::log1p(-0.5 * c * e)};
}

// Inverse of the conditional at the probability with logs (lp, lq).
inline double clayton_conditional_inv_logs(double theta, double u, double lp, double lq) {
    // a = -theta/(theta+1) log F; for F near 1 take log F from the complement
    const double l = lp < -0.5 ? lp : std::log1p(-std::exp(lq));
    const double a = -theta / (theta + 1.0) * l;
    return std::exp(std::log(u) - log_expm1(a) / theta);
}

inline double clayton_conditional_inv(double theta, double u, double w) {
    return clayton_conditional_inv_logs(theta, u, std::log(w), std::log1p(-w));
}

inline double clayton_log_density(double theta, double u, double v) {
    const double lu = std::log(u);
    const double lv = std::log(v);
    return std::log1p(theta) - (theta + 1.0) * (lu + lv) -
           (1.0 / theta + 2.0) * log_add_exp(-theta * lu, -theta * lv);
}

inline double lc_conditional_unchecked(const LevyCopula& fam, double u, double v) {
    return clayton_conditional(std::get<ClaytonLevy>(fam).theta, u, v);
}

inline double lc_conditional_inv_unchecked(const LevyCopula& fam, double u, double w) {
    return clayton_conditional_inv(std::get<ClaytonLevy>(fam).theta, u, w);
}

// Normal score Phi^-1(F_{v|u}(v)) and its inverse, free of saturation at 0 and 1.
inline double lc_conditional_score_unchecked(const LevyCopula& fam, double u, double v) {
    const auto l = clayton_conditional_logs(std::get<ClaytonLevy>(fam).theta, u, v);
    return norm_score(l.lp, l.lq);
}

inline double lc_conditional_inv_score_unchecked(const LevyCopula& fam, double u, double z) {
    const double lp = log_norm_cdf(z);
    const double lq = log_norm_cdf(-z);
    return clayton_conditional_inv_logs(std::get<ClaytonLevy>(fam).theta, u, lp, lq);
}

inline double lc_log_density_unchecked(const LevyCopula& fam, double u, double v) {
    return clayton_log_density(std::get<ClaytonLevy>(fam).theta, u, v);
}

inline double lc_value_unchecked(const LevyCopula& fam, double u, double v) {
    return clayton_value(std::get<ClaytonLevy>(fam).theta, u, v);
}

}  // namespace detail

inline double lc_value(const LevyCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u >= 0.0 && v >= 0.0, "lc_value: rates must be nonnegative");
    return detail::lc_value_unchecked(fam, u, v);
}

// F_{v|u}(v) = d C(u, v) / du: distribution of the second coordinate given the first.
inline double lc_conditional(const LevyCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u > 0.0 && std::isfinite(u), "lc_conditional: conditioning rate must be positive and finite");
    detail::require(v >= 0.0, "lc_conditional: rate must be nonnegative");
    return detail::lc_conditional_unchecked(fam, u, v);
}

inline double lc_conditional_inv(const LevyCopula& fam, double u, double w) {
    detail::check_family(fam);
    detail::require(u > 0.0 && std::isfinite(u), "lc_conditional_inv: conditioning rate must be positive and finite");
    detail::require(w > 0.0 && w < 1.0, "lc_conditional_inv: probability must lie in (0, 1)");
    return detail::lc_conditional_inv_unchecked(fam, u, w);
}

inline double lc_log_density(const LevyCopula& fam, double u, double v) {
    detail::check_family(fam);
    detail::require(u > 0.0 && v > 0.0 && std::isfinite(u) && std::isfinite(v),
                    "lc_density: rates must be positive and finite");
    return detail::lc_log_density_unchecked(fam, u, v);
}

inline double lc_density(const LevyCopula& fam, double u, double v) { return std::exp(lc_log_density(fam, u, v)); }

struct RateBox {
    double a1, b1, a2, b2;
};

// Inclusion-exclusion volume C(b1,b2) - C(a1,b2) - C(b1,a2) + C(a1,a2).
inline double lc_volume(const LevyCopula& fam, const RateBox& box) {
    detail::check_family(fam);
    detail::require(box.a1 >= 0.0 && box.a2 >= 0.0, "lc_volume: corners must be nonnegative");
    detail::require(box.a1 <= box.b1 && box.a2 <= box.b2, "lc_volume: lower corner exceeds upper corner");
    if (box.a1 == box.b1 || box.a2 == box.b2) return 0.0;
    if (box.b1 == kInfiniteRate && box.b2 == kInfiniteRate) return kInfiniteRate;
    const auto c = [&](double u, double v) { return detail::lc_value_unchecked(fam, u, v); };
    return c(box.b1, box.b2) - c(box.a1, box.b2) - c(box.b1, box.a2) + c(box.a1, box.a2);
}

}  // namespace plcc
