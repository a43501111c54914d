#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nlfiber/path_integral.hpp"
#include "nlfiber/validation/oracles.hpp"

using namespace nlfiber;
namespace v = nlfiber::validation;

TEST(PathIntegral, DeterminantSmallCases) {
    for (double mu : {0.0, 0.5, 3.0}) {
        const double a2 = fluctuation_alpha(2, mu), a3 = fluctuation_alpha(3, mu);
        EXPECT_NEAR(det_m(2, mu), 2.0 + a2, 1e-15);
        EXPECT_NEAR(det_m(3, mu), 3.0 + 6.0 * a3, 1e-14);
    }
    EXPECT_THROW(det_m(1, 1.0), std::invalid_argument);
}

TEST(PathIntegral, DeterminantAndInverseMatchDenseLu) {
    for (int n : {2, 3, 7, 20, 64}) {
        for (double mu : {0.0, 0.3, 1.0, 4.0}) {
            const double d = v::dense_det(n, mu);
            EXPECT_NEAR(det_m(n, mu), d, 1e-11 * std::abs(d));
            const auto inv = v::dense_inverse(n, mu);
            for (int i = 1; i < n; ++i)
                for (int j = 1; j < n; ++j)
                    EXPECT_NEAR(m_inverse_entry(n, mu, i, j), inv(i - 1, j - 1), 1e-11 * (1.0 + std::abs(inv(i - 1, j - 1))));
        }
    }
}

TEST(PathIntegral, InverseIsSymmetricAndIndexChecked) {
    for (int i = 1; i < 10; ++i)
        for (int j = 1; j < 10; ++j) EXPECT_DOUBLE_EQ(m_inverse_entry(10, 1.3, i, j), m_inverse_entry(10, 1.3, j, i));
    EXPECT_THROW(m_inverse_entry(10, 1.0, 0, 1), std::out_of_range);
    EXPECT_THROW(m_inverse_entry(10, 1.0, 1, 10), std::out_of_range);
}

TEST(PathIntegral, ZeroMuIsTheBrownianBridge) {
    const int n = 16;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            const double x = double(std::min(i, j)) / n, y = double(std::max(i, j)) / n;
            EXPECT_NEAR(m_inverse_entry(n, 0.0, i, j), n * x * (1.0 - y), 1e-13);
        }
}

TEST(PathIntegral, ContinuumLimit) {
    for (double mu : {0.5, 1.0, 2.0}) {
        double prev = 1e300;
        for (int n : {10, 100, 1000, 10000}) {
            const double err = std::abs(det_m(n, mu) / n - (1.0 + mu * mu / 3.0));
            EXPECT_LT(err, prev);
            prev = err;
            const double nd = n;
            const double coef = fluctuation_alpha(n, mu) * nd * nd * nd * nd / (4.0 * det_m(n, mu));
            if (n == 10000) {
                EXPECT_NEAR(coef, 3.0 * mu * mu / (3.0 + mu * mu), 1e-7);
            }
        }
        EXPECT_LT(prev, 1e-7);
    }
}

TEST(PathIntegral, GreenBoundaryAndSymmetry) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double mu : {0.0, 0.7, 2.0}) {
        for (int t = 0; t < 50; ++t) {
            const double a = u(rng), b = u(rng);
            const auto at0 = green_matrix(0.0, b, mu, 1.0), at1 = green_matrix(1.0, b, mu, 1.0);
            EXPECT_NEAR(std::abs(at0.g11) + std::abs(at0.g12) + std::abs(at0.g21) + std::abs(at0.g22), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(at1.g11) + std::abs(at1.g12) + std::abs(at1.g21) + std::abs(at1.g22), 0.0, 1e-15);
            const auto g = green_matrix(a, b, mu, 1.0), gt = green_matrix(b, a, mu, 1.0);
            EXPECT_NEAR(g.g11, gt.g11, 1e-14);
            EXPECT_NEAR(g.g22, gt.g22, 1e-14);
            EXPECT_NEAR(g.g12, gt.g21, 1e-14);
        }
    }
}

TEST(PathIntegral, GreenScalesWithLength) {
    const auto a = green_matrix(300.0, 700.0, 1.1, 1000.0), b = green_matrix(0.3, 0.7, 1.1, 1.0);
    EXPECT_DOUBLE_EQ(a.g11, b.g11);
    EXPECT_DOUBLE_EQ(a.g12, b.g12);
    EXPECT_THROW(green_matrix(-1.0, 0.5, 1.0, 1.0), std::domain_error);
    EXPECT_THROW(green_matrix(0.5, 0.5, 1.0, 0.0), std::invalid_argument);
}

TEST(PathIntegral, ZeroMuGreenIsHalfTheBridge) {
    for (double a : {0.1, 0.4, 0.9})
        for (double b : {0.2, 0.5}) {
            const auto g = green_matrix(a, b, 0.0, 1.0);
            const double bridge = std::min(a, b) * (1.0 - std::max(a, b)) / 2.0;
            EXPECT_NEAR(g.g11, bridge, 1e-15);
            EXPECT_NEAR(g.g22, bridge, 1e-15);
            EXPECT_EQ(g.g12, 0.0);
        }
}

TEST(PathIntegral, GreenInvertsTheOperator) {
    const auto f = [](double s) { return std::exp(-s) * std::sin(3.0 * s) + s * s; };
    for (double mu : {0.5, 1.5, 3.0})
        for (double sp : {0.3, 0.55}) {
            const auto r = v::green_delta_test(mu, sp, 2000, f);
            EXPECT_LT(r.off_diagonal_sup, 1e-5);
            EXPECT_LT(r.test_integral_err, 1e-5);
        }
}

TEST(PathIntegral, PrefactorMatchesCoefficientTable) {
    const ChannelParams p = ChannelParams::reference_defaults();
    const double ql = p.noise_power();
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.03, 0.03), um(0.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double mu = um(rng), x = u(rng), y = u(rng), rho = 1.2;
        const double d = 1.0 + mu * mu / 3.0;
        const double expect = v::prefactor_bracket_table(mu, rho, x, y) / (M_PI * ql * std::sqrt(d));
        EXPECT_NEAR(quantum_correction({mu, x, y}, rho, p), expect, 1e-12 * std::abs(expect));
    }
    EXPECT_NEAR(quantum_correction({0.0, 0.01, 0.02}, 1.0, p), 1.0 / (M_PI * ql), 1e-9);
    EXPECT_THROW(quantum_correction({1.0, 0.0, 0.0}, 0.0, p), std::domain_error);
}
