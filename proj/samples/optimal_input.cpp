// Optimal input parameters against their small- and large-power expansions, each shown where it applies.

#include <cmath>
#include <cstdio>

#include "nlfiber/distributions.hpp"

int main() {
    using namespace nlfiber;
    const auto p = ChannelParams::reference_defaults();
    std::printf("%10s %10s %14s %14s %14s\n", "P_mW", "gt", "lambda0", "small", "large");
    for (double pw : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0, 1e4}) {
        const double gt = gamma_tilde(pw, p);
        const auto d = solve_optimal(pw, p);
        const double small = gt < 0.5 ? optimal_small_power(pw, p).lambda0 : NAN;
        const double large = gt > 5.0 ? optimal_large_power(pw, p).lambda0 : NAN;
        std::printf("%10.4g %10.4g %14.6g %14.6g %14.6g\n", pw, gt, d.lambda0, small, large);
    }
}
