#include <cmath>

#include <gtest/gtest.h>

#include "nlfiber/jet.hpp"
#include "nlfiber/roots.hpp"

using namespace nlfiber;

TEST(Roots, FindsDottieNumber) {
    const auto r = find_root_bracketed([](double x) { return std::cos(x) - x; }, 0.0, 1.0, 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.root, 0.73908513321516064166, 1e-14);
}

TEST(Roots, WideBracketsOnThePositiveAxis) {
    const auto r = find_root_bracketed([](double x) { return std::log(x) - 20.0; }, 1e-12, 1e12, 1e-13);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.root / std::exp(20.0), 1.0, 1e-12);
    EXPECT_LT(r.iterations, 200);
}

TEST(Roots, MissingSignChangeThrows) {
    try {
        find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0);
        FAIL();
    } catch (const BracketError& e) {
        EXPECT_EQ(e.lo, -1.0);
        EXPECT_EQ(e.f_hi, 2.0);
    }
}

TEST(Jet, TaylorCoefficients) {
    using J = Jet<5>;
    const double x0 = 0.7;
    const J x = J::variable(x0);
    const J e = exp(x);
    double fact = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k) fact *= k;
        EXPECT_NEAR(e.c[k], std::exp(x0) / fact, 1e-14);
    }
    const J l = log(x);
    EXPECT_NEAR(l.c[0], std::log(x0), 1e-15);
    for (int k = 1; k <= 5; ++k) EXPECT_NEAR(l.c[k], (k % 2 ? 1.0 : -1.0) / (k * std::pow(x0, k)), 1e-12);
    const J s = sqrt(x);
    EXPECT_NEAR(s.c[2], -0.125 * std::pow(x0, -1.5), 1e-14);
    const J q = 1.0 / (1.0 + x * x);
    const double d = 1.0 + x0 * x0;
    EXPECT_NEAR(q.c[1], -2.0 * x0 / (d * d), 1e-14);
    EXPECT_EQ(pow(x, 0.0).c[1], 0.0);
}
