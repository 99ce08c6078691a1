#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "plcc/errors.hpp"

namespace plcc {

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

namespace detail {

// Wichura's AS241 (PPND16) without argument checks; p must lie in (0, 1).
inline double ppnd16(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                    45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
                 133.14166789178437745) * r + 3.387132872796366608) /
               (((((((5226.495278852854561 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                    21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
                 42.313330701600911252) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                   1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                   0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                   0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                   7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

}  // namespace detail

inline double norm_quantile(double u) {
    detail::require(u > 0.0 && u < 1.0, "norm_quantile: probability must lie in (0, 1)");
    return detail::ppnd16(u);
}

namespace detail {

// log(1 - e^x) for x <= 0
inline double log1mexp(double x) { return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x)); }

}  // namespace detail

// log Phi(x), accurate far into both tails.
inline double log_norm_cdf(double x) {
    if (x > 0.0) return std::log1p(-0.5 * std::erfc(x / std::numbers::sqrt2));
    if (x > -35.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
    // Mills ratio asymptotic series; the omitted term is below 1e-15 here
    const double s = 1.0 / (x * x);
    const double series =
        1.0 - s * (1.0 - 3.0 * s * (1.0 - 5.0 * s * (1.0 - 7.0 * s * (1.0 - 9.0 * s * (1.0 - 11.0 * s)))));
    return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

namespace detail {

// Phi^-1(e^lp) for lp <= log(1/2), including probabilities below the double range.
inline double lower_score(double lp) {
    if (lp > -700.0) return ppnd16(std::exp(lp));
    double z = -std::sqrt(-2.0 * lp - std::log(-4.0 * std::numbers::pi * lp));
    for (int it = 0; it < 6; ++it) {
        const double lc = log_norm_cdf(z);
        const double step = (lc - lp) / std::exp(-0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - lc);
        z -= step;
        if (std::fabs(step) <= 1e-15 * std::fabs(z)) break;
    }
    return z;
}

}  // namespace detail

// Normal score of a probability given as the pair (log p, log(1 - p)); whichever
// tail is smaller carries the precision.
inline double norm_score(double lp, double lq) {
    return lp <= lq ? detail::lower_score(lp) : -detail::lower_score(lq);
}

inline double norm_score_from_log(double lp) { return norm_score(lp, detail::log1mexp(lp)); }

namespace detail {

// P(X > h, Y > k) for a standard bivariate normal with correlation r.
// Drezner-Wesolowsky as refined by Genz (2004), using a 20-point
// Gauss-Legendre rule throughout.
inline double bvn_upper(double h, double k, double r) {
    using rule = boost::math::quadrature::gauss<double, 20>;
    const auto& nodes = rule::abscissa();
    const auto& weights = rule::weights();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    double hk = h * k;
    double bvn = 0.0;
    if (std::fabs(r) < 0.925) {
        const double hs = (h * h + k * k) / 2.0;
        const double asr = std::asin(r);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double sn = std::sin(asr * (sign * nodes[i] + 1.0) / 2.0);
                bvn += weights[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        return bvn * asr / (2.0 * two_pi) + norm_cdf(-h) * norm_cdf(-k);
    }

    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (std::fabs(r) < 1.0) {
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double c = (4.0 - hk) / 8.0;
        const double d = (12.0 - hk) / 16.0;
        bvn = a * std::exp(-(bs / as + hk) / 2.0) *
              (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
        if (hk > -160.0) {
            const double b = std::sqrt(bs);
            bvn -= std::exp(-hk / 2.0) * std::sqrt(two_pi) * norm_cdf(-b / a) * b *
                   (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (double sign : {-1.0, 1.0}) {
                const double xs = (a * (sign * nodes[i] + 1.0)) * (a * (sign * nodes[i] + 1.0));
                const double rs = std::sqrt(1.0 - xs);
                bvn += a * weights[i] *
                       (std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs -
                        std::exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs)));
            }
        }
        bvn = -bvn / two_pi;
    }
    if (r > 0.0) return bvn + norm_cdf(-std::max(h, k));
    bvn = -bvn;
    if (k > h) {
        bvn += h < 0.0 ? norm_cdf(k) - norm_cdf(h) : norm_cdf(-h) - norm_cdf(-k);
    }
    return bvn;
}

}  // namespace detail

// P(X <= x, Y <= y) for a standard bivariate normal with correlation rho.
// Infinite limits are accepted and reduce to the univariate margins.
inline double bivar_norm_cdf(double x, double y, double rho) {
    detail::require(rho > -1.0 && rho < 1.0, "bivar_norm_cdf: correlation must lie in (-1, 1)");
    if (x == -INFINITY || y == -INFINITY) return 0.0;
    if (x == INFINITY) return norm_cdf(y);
    if (y == INFINITY) return norm_cdf(x);
    return std::clamp(detail::bvn_upper(-x, -y, rho), 0.0, 1.0);
}

}  // namespace plcc
