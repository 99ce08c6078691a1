#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "plcc/normal.hpp"
#include "plcc/random.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace plcc;

TEST_CASE("normal quantile examples", "[normal]") {
    CHECK(norm_quantile(0.5) == 0.0);
    CHECK_THAT(norm_quantile(0.975), WithinAbs(1.959964, 1e-6));
    CHECK_THROWS_AS(norm_quantile(0.0), plcc::domain_error);
    CHECK_THROWS_AS(norm_quantile(1.0), plcc::domain_error);
    CHECK_THROWS_AS(norm_quantile(-0.1), plcc::domain_error);
}

TEST_CASE("normal quantile against high-precision reference", "[normal][property]") {
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        // log-uniform over the tails and uniform in the body
        const double u = i % 2 ? rng.uniform() : std::pow(10.0, -300.0 * rng.uniform());
        const double z = norm_quantile(u);
        CHECK_THAT(z, WithinRel(oracle::phi_quantile(u), 1e-9));
        if (u > 1e-3) CHECK_THAT(norm_cdf(z), WithinAbs(u, 1e-12));
    }
}

TEST_CASE("normal cdf and pdf", "[normal]") {
    for (double x = -30.0; x <= 8.0; x += 0.37) {
        CHECK_THAT(norm_cdf(x), WithinRel(oracle::phi_cdf(x), 1e-13));
        CHECK_THAT(norm_pdf(x), WithinRel(oracle::phi_pdf(x), 1e-13));
    }
}

TEST_CASE("bivariate normal cdf examples", "[normal]") {
    CHECK_THAT(bivar_norm_cdf(0.0, 0.0, 0.0), WithinAbs(0.25, 1e-15));
    for (double r : {-0.99, -0.9, -0.5, 0.0, 0.3, 0.8, 0.93, 0.999}) {
        CHECK_THAT(bivar_norm_cdf(0.0, 0.0, r), WithinAbs(0.25 + std::asin(r) / (2.0 * std::numbers::pi), 1e-14));
    }
    for (double y : {-2.0, 0.1, 1.5}) {
        CHECK_THAT(bivar_norm_cdf(INFINITY, y, 0.7), WithinAbs(norm_cdf(y), 1e-15));
        CHECK_THAT(bivar_norm_cdf(y, INFINITY, -0.4), WithinAbs(norm_cdf(y), 1e-15));
        CHECK(bivar_norm_cdf(-INFINITY, y, 0.2) == 0.0);
        // far into the tail the finite evaluation agrees with the limit
        CHECK_THAT(bivar_norm_cdf(40.0, y, 0.7), WithinAbs(norm_cdf(y), 1e-14));
    }
    CHECK_THROWS_AS(bivar_norm_cdf(0.0, 0.0, 1.0), plcc::domain_error);
    CHECK_THROWS_AS(bivar_norm_cdf(0.0, 0.0, -1.0), plcc::domain_error);
}

TEST_CASE("bivariate normal cdf against quadrature", "[normal][property]") {
    Rng rng(11);
    for (int i = 0; i < 400; ++i) {
        const double x = -6.0 + 12.0 * rng.uniform();
        const double y = -6.0 + 12.0 * rng.uniform();
        const double r = -0.999 + 1.998 * rng.uniform();
        const double got = bivar_norm_cdf(x, y, r);
        CHECK_THAT(got, WithinAbs(oracle::bvn_cdf(x, y, r), 1e-10));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
    }
}

TEST_CASE("log normal cdf against extended precision", "[normal][property]") {
    using big = boost::multiprecision::cpp_bin_float_50;
    for (double x = -300.0; x <= 9.0; x += 0.37) {
        const big p = boost::multiprecision::erfc(-big(x) / boost::multiprecision::sqrt(big(2))) / 2;
        const double ref = static_cast<double>(boost::multiprecision::log(p));
        CHECK_THAT(log_norm_cdf(x), WithinRel(ref, 1e-13) || WithinAbs(ref, 1e-16));
    }
}

TEST_CASE("normal scores from log probabilities", "[normal][property]") {
    CHECK(norm_score_from_log(std::log(0.5)) == 0.0);
    CHECK_THAT(norm_score_from_log(std::log(0.975)), WithinAbs(1.959963984540054, 1e-12));
    for (double lp = -1e5; lp < -1e-30; lp *= 0.9) {
        const double z = norm_score_from_log(lp);
        CHECK_THAT(log_norm_cdf(z), WithinRel(lp, 1e-12));
    }
    // the complement carries the precision near 1
    const double z = norm_score(std::log1p(-1e-40), std::log(1e-40));
    CHECK_THAT(z, WithinRel(-oracle::phi_quantile(1e-40), 1e-13));
    CHECK_THAT(norm_score(std::log(1e-40), std::log1p(-1e-40)), WithinRel(oracle::phi_quantile(1e-40), 1e-13));
}
