#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "nlfiber/quadrature.hpp"

using namespace nlfiber;

TEST(Quadrature, KronrodIsExactForDegree21Polynomials) {
    for (int deg = 0; deg <= 21; ++deg) {
        auto f = [deg](double x) { return std::pow(x, deg); };
        quad::Options opt;
        opt.max_subdivisions = 0;
        const auto r = quad::integrate(f, 0.0, 1.0, opt);
        EXPECT_NEAR(r.value, 1.0 / (deg + 1), 1e-15) << deg;
    }
}

TEST(Quadrature, GaussEmbeddedRuleDetectsDegree14) {
    // G7 is exact to degree 13, so the estimate is ~0 there and nonzero at 14.
    quad::Options opt;
    opt.max_subdivisions = 0;
    const auto r13 = quad::integrate([](double x) { return std::pow(x, 13); }, -1.0, 1.0, opt);
    const auto r14 = quad::integrate([](double x) { return std::pow(x, 14); }, 0.0, 1.0, opt);
    EXPECT_LT(r13.abs_error, 1e-14);
    EXPECT_GT(r14.abs_error, 1e-14);
}

TEST(Quadrature, AdaptiveHandlesEndpointSingularity) {
    const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 2.0, 1e-11);
}

TEST(Quadrature, SemiInfiniteTailWithScale) {
    quad::Options opt;
    opt.tail_scale = 0.01;
    const auto r = quad::integrate([](double x) { return 100.0 * std::exp(-100.0 * x); },
                                   {0.0, std::numeric_limits<double>::infinity()}, opt);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    const auto g = quad::integrate([](double x) { return std::exp(-x * x); },
                                   {0.0, 1.0, std::numeric_limits<double>::infinity()});
    EXPECT_NEAR(g.value, 0.5 * std::sqrt(M_PI), 1e-13);
}

TEST(Quadrature, RejectsBadPoints) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(quad::integrate(f, std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(quad::integrate(f, std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST(Quadrature, GaussLaguerreMoments) {
    for (double alpha : {-0.5, 0.0, 1.0, 3.0}) {
        const auto& r = quad::gauss_laguerre(60, alpha);
        for (int k = 0; k <= 10; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = std::tgamma(alpha + 1.0 + k);
            EXPECT_NEAR(s / exact, 1.0, 1e-12) << alpha << " " << k;
        }
    }
    const auto& big = quad::gauss_laguerre(200, -0.5);
    EXPECT_EQ(big.nodes.size(), 200u);
    EXPECT_NEAR(std::accumulate(big.weights.begin(), big.weights.end(), 0.0), std::sqrt(M_PI), 1e-12);
}

TEST(Quadrature, GaussHermiteAndLegendreMoments) {
    const auto& h = quad::gauss_hermite(40);
    double m0 = 0, m2 = 0, m4 = 0;
    for (std::size_t i = 0; i < h.nodes.size(); ++i) {
        const double x2 = h.nodes[i] * h.nodes[i];
        m0 += h.weights[i];
        m2 += h.weights[i] * x2;
        m4 += h.weights[i] * x2 * x2;
    }
    EXPECT_NEAR(m0, std::sqrt(M_PI), 1e-13);
    EXPECT_NEAR(m2, 0.5 * std::sqrt(M_PI), 1e-13);
    EXPECT_NEAR(m4, 0.75 * std::sqrt(M_PI), 1e-13);
    const auto& p = quad::gauss_legendre(8);
    double s = 0;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) s += p.weights[i] * std::pow(p.nodes[i], 14);
    EXPECT_NEAR(s, 2.0 / 15.0, 1e-14);
}
