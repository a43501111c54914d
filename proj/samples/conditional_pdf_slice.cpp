// Leading and next-to-leading P[Y|X] along the x0 axis of the reduced frame, |X|^2 = 1 mW.

#include <cmath>
#include <cstdio>

#include "nlfiber/conditional_pdf.hpp"

int main() {
    using namespace nlfiber;
    ChannelParams p = ChannelParams::reference_defaults();
    p.noise_density = 1.5e-6;  // QL = 1.5e-3 so the correction is visible
    const ComplexAmplitude x{1.0, 0.0};
    const double mu = nonlinear_phase(x, p), s = std::sqrt(p.noise_power());
    std::printf("mu = %.3f, QL = %.3g mW\n%8s %14s %14s\n", mu, p.noise_power(), "x0/sqrtQL", "leading", "nlo");
    for (int i = -8; i <= 8; ++i) {
        const ReducedCoords rc{mu, 0.5 * i * s, 0.0};
        std::printf("%8.2f %14.6g %14.6g\n", 0.5 * i, conditional_pdf_reduced(rc, 1.0, p, PdfOrder::leading).value,
                    conditional_pdf_reduced(rc, 1.0, p, PdfOrder::nlo).value);
    }
}
