#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlfiber {

struct RootResult {
    double root = 0.0;
    double f_root = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct BracketError : std::runtime_error {
    double lo, hi, f_lo, f_hi;
    BracketError(double l, double h, double fl, double fh)
        : std::runtime_error("no sign change on [" + std::to_string(l) + ", " + std::to_string(h) + "]"),
          lo(l), hi(h), f_lo(fl), f_hi(fh) {}
};

// Bisection with secant (regula falsi, Illinois-damped) steps. Bisection is
// geometric while the bracket spans more than a factor 4 on the positive axis.
template <class F>
RootResult find_root_bracketed(F&& f, double lo, double hi, double rel_tol = 1e-12, int max_iter = 300) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, lo, lo, 0, true};
    if (fhi == 0.0) return {hi, 0.0, hi, hi, 0, true};
    if ((flo < 0.0) == (fhi < 0.0)) throw BracketError(lo, hi, flo, fhi);
    RootResult r;
    int side = 0;
    double width_before = hi - lo;
    for (int it = 1; it <= max_iter; ++it) {
        r.iterations = it;
        double x;
        const bool wide = lo > 0.0 && hi > 4.0 * lo;
        if (wide) {
            x = std::sqrt(lo * hi);
        } else if (it % 3 == 0 && (hi - lo) > 0.5 * width_before) {
            x = 0.5 * (lo + hi);
        } else {
            x = (lo * fhi - hi * flo) / (fhi - flo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        }
        if (it % 3 == 0) width_before = hi - lo;
        const double fx = f(x);
        if (fx == 0.0) return {x, 0.0, x, x, it, true};
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
            if (side == -1 && !wide) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1 && !wide) flo *= 0.5;
            side = 1;
        }
        r.lo = lo;
        r.hi = hi;
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) {
            r.converged = true;
            break;
        }
    }
    r.root = std::abs(flo) < std::abs(fhi) ? lo : hi;
    r.f_root = f(r.root);
    return r;
}

}  // namespace nlfiber
