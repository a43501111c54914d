// Prints I_opt, I_beta=2, I_beta=1 and log(1 + SNR) in bits over a coarse power grid.

#include <cstdio>

#include "nlfiber/information.hpp"
#include "nlfiber/validation/checks.hpp"

int main() {
    using namespace nlfiber;
    const auto p = ChannelParams::reference_defaults();
    std::printf("%10s %10s %10s %10s %10s\n", "P_mW", "I_opt", "I_beta2", "I_beta1", "shannon");
    for (double pw : validation::log_grid(1e-2, 1e3, 11)) {
        std::printf("%10.4g %10.4f %10.4f %10.4f %10.4f\n", pw, nats_to_bits(mi_optimal(pw, p).mi_nats),
                    nats_to_bits(mi_beta(2.0, pw, p).mi_nats), nats_to_bits(mi_beta(1.0, pw, p).mi_nats),
                    nats_to_bits(shannon_capacity(pw, p)));
    }
    std::printf("half-Gaussian asymptote: %.4f bits\n", nats_to_bits(mi_beta_asymptote(1.0, p)));
    std::printf("Gaussian/half-Gaussian crossover: %.3f mW\n", validation::beta_crossover_power(p));
}
