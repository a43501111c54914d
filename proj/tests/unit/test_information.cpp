#include <cmath>

#include <gtest/gtest.h>

#include "nlfiber/information.hpp"

using namespace nlfiber;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct MiRef {
    double beta, power, mi;
};

// 40-digit mpmath values.
const MiRef kMiBeta[] = {
    {1.0, 0.1, 6.2812931695158985057}, {1.0, 1.0, 8.4037641865971432499}, {1.0, 10.0, 9.6874811867179439826},
    {2.0, 0.1, 6.4990195699275421428}, {2.0, 1.0, 8.6289435062445928708}, {2.0, 10.0, 9.7007043367066849666},
    {0.5, 0.1, 5.2487332846063162729}, {0.5, 1.0, 7.3729021965937165955}, {0.5, 10.0, 8.8901966693176831379},
    {3.0, 0.1, 6.455051396357135844},  {3.0, 1.0, 8.5908476012391641468}, {3.0, 10.0, 9.5600628852380614286},
};

const MiRef kMiOptimal[] = {
    {0.0, 1.0, 8.6293963316423250651},
    {0.0, 0.01, 4.1996717517629863972},
    {0.0, 100.0, 10.306995621401792276},
};

struct JRef {
    double beta, gt, value;
};

const JRef kJ[] = {
    {2.0, 100.0, 8.0867716547534705651},
    {1.0, 0.3, 0.28046431448125457924},
    {3.0, 20.0, 4.6993802499705287},
};

}  // namespace

TEST(Information, BetaFamilyMatchesReference) {
    const auto p = ChannelParams::reference_defaults();
    for (const auto& r : kMiBeta) {
        const auto m = mi_beta(r.beta, r.power, p);
        EXPECT_LT(rel(m.mi_nats, r.mi), 1e-11) << r.beta << " " << r.power;
        EXPECT_NEAR(m.h_out - m.h_cond, m.mi_nats, 1e-12);
    }
}

TEST(Information, OptimalMatchesReference) {
    const auto p = ChannelParams::reference_defaults();
    for (const auto& r : kMiOptimal) {
        const auto m = mi_optimal(r.power, p);
        EXPECT_LT(rel(m.mi_nats, r.mi), 1e-9) << r.power;
        EXPECT_NEAR(m.h_out - m.h_cond, m.mi_nats, 1e-12);
    }
}

TEST(Information, LogMomentRoutes) {
    for (const auto& r : kJ) {
        const auto a = beta_log_moment(r.beta, r.gt);
        EXPECT_LT(rel(a.value, r.value), 1e-11) << r.beta << " " << r.gt;
        const auto b = beta_log_moment(r.beta, r.gt, LaguerreRoute::adaptive);
        EXPECT_EQ(b.route, LaguerreRoute::adaptive);
        EXPECT_LT(rel(b.value, r.value), 1e-11) << r.beta << " " << r.gt;
    }
    // Smooth integrand: Gauss-Laguerre alone is accurate.
    const auto gl = beta_log_moment(1.0, 0.3, LaguerreRoute::gauss_laguerre);
    EXPECT_EQ(gl.route, LaguerreRoute::gauss_laguerre);
    EXPECT_LT(rel(gl.value, 0.28046431448125457924), 1e-12);
    EXPECT_EQ(beta_log_moment(2.0, 0.0).value, 0.0);
    EXPECT_THROW(beta_log_moment(0.0, 1.0), std::invalid_argument);
}

TEST(Information, EntropiesMatchQuadrature) {
    const auto p = ChannelParams::reference_defaults();
    for (double beta : {0.5, 1.0, 2.0, 3.0})
        for (double pw : {0.1, 1.0, 10.0}) {
            const auto rd = make_radial(BetaInput{beta, pw});
            EXPECT_NEAR(entropy_output_general(rd).value, entropy_output_beta(beta, pw), 1e-9) << beta << " " << pw;
            EXPECT_NEAR(cond_entropy_general(rd, p).value, cond_entropy_beta(beta, pw, p), 1e-9) << beta << " " << pw;
        }
}

TEST(Information, OptimalEntropiesMatchGeneralRoute) {
    const auto p = ChannelParams::reference_defaults();
    for (double pw : {0.01, 1.0, 100.0}) {
        const auto d = solve_optimal(pw, p);
        const auto m = mi_optimal(d, p);
        const auto rd = make_radial(d);
        EXPECT_NEAR(m.h_out, entropy_output_general(rd).value, 1e-8) << pw;
        EXPECT_NEAR(m.h_cond, cond_entropy_general(rd, p).value, 1e-8) << pw;
    }
}

TEST(Information, PlanarEntropyOfRadialDensity) {
    const BetaInput d{1.0, 1.0};
    auto planar = [&](ComplexAmplitude x) { return beta_pdf(d, x.magnitude()); };
    const auto h = entropy_output_general_2d(planar, 1.0);
    // 40-digit mpmath value.
    EXPECT_NEAR(h.value, 1.9284869963233338309, 1e-8);
    EXPECT_NEAR(entropy_output_beta(1.0, 1.0), 1.9284869963233338309, 1e-13);
}

TEST(Information, LinearChannelLimits) {
    ChannelParams p{0.0, 1000.0, 1.5e-7};
    for (double pw : {0.01, 1.0, 100.0}) {
        EXPECT_NEAR(mi_optimal(pw, p).mi_nats, std::log1p(snr(pw, p)), 1e-14);
        EXPECT_NEAR(mi_beta(2.0, pw, p).mi_nats, std::log(snr(pw, p)), 1e-13);
        EXPECT_NEAR(shannon_capacity(pw, p), std::log1p(snr(pw, p)), 0.0);
    }
    EXPECT_THROW(mi_beta_asymptote(1.0, p), std::invalid_argument);
}

TEST(Information, AsymptoteExceedsPriorBoundByLogTwo) {
    for (const ChannelParams& p : {ChannelParams::reference_defaults(), ChannelParams{3e-3, 500.0, 2e-7}})
        EXPECT_NEAR(mi_beta_asymptote(1.0, p) - prior_bound_baseline(p), std::log(2.0), 1e-13);
}

TEST(Information, BetaFamilyApproachesAsymptote) {
    const auto p = ChannelParams::reference_defaults();
    for (double beta : {1.0, 2.0}) {
        const double a = mi_beta_asymptote(beta, p);
        EXPECT_LT(std::abs(mi_beta(beta, 1e5, p).mi_nats - a), std::abs(mi_beta(beta, 1e3, p).mi_nats - a));
        // Residual of the log moment decays like gt^(-beta/2) up to logs.
        const double gt = gamma_tilde(1e7, p);
        EXPECT_NEAR(mi_beta(beta, 1e7, p).mi_nats, a, 10.0 * std::pow(gt, -0.5 * beta) * std::log(gt));
    }
}

TEST(Information, ContinuousInBeta) {
    const auto p = ChannelParams::reference_defaults();
    const double at2 = mi_beta(2.0, 1.0, p).mi_nats;
    EXPECT_NEAR(mi_beta(2.0 + 1e-7, 1.0, p).mi_nats, at2, 1e-6);
    EXPECT_NEAR(mi_beta(2.0 - 1e-7, 1.0, p).mi_nats, at2, 1e-6);
}

TEST(Information, OptimalAsymptotes) {
    const auto p = ChannelParams::reference_defaults();
    const double small = 1e-3;
    const double snr0 = snr(small, p);
    const auto s = mi_optimal_small_power(small, p);
    EXPECT_TRUE(s.unity_beyond_accuracy);
    // The expansion is a high-SNR result; compare it without the unity.
    EXPECT_NEAR(s.value - std::log1p(snr0) + std::log(snr0), mi_optimal(small, p).mi_nats, 1e-10);

    const double big = 1e7;
    const double l = std::log(2.0 * std::exp(-special::euler_gamma) * gamma_tilde(big, p));
    EXPECT_NEAR(mi_optimal_large_power(big, p), mi_optimal(big, p).mi_nats, std::pow(std::log(l) / l, 2.0));
    EXPECT_THROW(mi_optimal_large_power(1e-3, p), std::domain_error);
}

TEST(Information, OptimalDominatesBetaFamily) {
    const auto p = ChannelParams::reference_defaults();
    for (double pw : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const double opt = mi_optimal(pw, p).mi_nats;
        for (double beta : {0.5, 1.0, 2.0, 3.0}) EXPECT_GE(opt, mi_beta(beta, pw, p).mi_nats - 1e-10) << pw << " " << beta;
    }
}

TEST(Information, Units) {
    EXPECT_NEAR(nats_to_bits(std::log(2.0)), 1.0, 1e-15);
}
