#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace nlfiber::quad {

struct Options {
    double abs_tol = 0.0;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
    // Length scale of the x = a + s t/(1-t) map used on a semi-infinite last piece.
    double tail_scale = 1.0;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod abscissae; odd indices are the 7-point Gauss abscissae.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    std::size_t domain = 0;
    bool operator<(const Piece& o) const { return error < o.error; }
};

// QUADPACK qk15 error heuristic.
template <class G>
std::pair<double, double> gk15(G& g, double a, double b) {
    constexpr double epmach = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = g(c);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        fv1[j] = g(c - dx);
        fv2[j] = g(c + dx);
        const double s = fv1[j] + fv2[j];
        resk += wgk[j] * s;
        resabs += wgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * s;
    }
    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    const double result = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * resabs, err);
    return {result, err};
}

}  // namespace detail

// Globally adaptive G7K15 over consecutive pieces [p0,p1], [p1,p2], ...
// The last point may be +infinity.
template <class F>
Result integrate(F&& f, const std::vector<double>& points, const Options& opt = {}) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] <= points[i + 1])) throw std::invalid_argument("integrate: points must be non-decreasing");
        if (std::isinf(points[i])) throw std::invalid_argument("integrate: only the last point may be infinite");
    }
    const bool tail = std::isinf(points.back());
    const std::size_t n_dom = points.size() - 1;
    const double s = opt.tail_scale;
    const double a_tail = points[n_dom - 1];

    Result res;
    auto eval = [&](std::size_t dom, double x) {
        ++res.evaluations;
        if (tail && dom == n_dom - 1) {
            const double u = 1.0 - x;
            const double v = f(a_tail + s * x / u);
            return v == 0.0 ? 0.0 : v * s / (u * u);
        }
        return static_cast<double>(f(x));
    };

    std::priority_queue<detail::Piece> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t d = 0; d < n_dom; ++d) {
        const double a = (tail && d == n_dom - 1) ? 0.0 : points[d];
        const double b = (tail && d == n_dom - 1) ? 1.0 : points[d + 1];
        if (a == b) continue;
        auto g = [&](double x) { return eval(d, x); };
        auto [v, e] = detail::gk15(g, a, b);
        heap.push({a, b, v, e, d});
        total += v;
        total_err += e;
    }

    std::vector<detail::Piece> frozen;
    int subdivisions = 0;
    auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    while (!heap.empty() && total_err > tolerance() && subdivisions < opt.max_subdivisions) {
        detail::Piece p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        const double scale = std::max(std::abs(p.a), std::abs(p.b));
        if (mid <= p.a || mid >= p.b || (p.b - p.a) < 1e3 * std::numeric_limits<double>::epsilon() * scale) {
            frozen.push_back(p);
            continue;
        }
        auto g = [&](double x) { return eval(p.domain, x); };
        auto [v1, e1] = detail::gk15(g, p.a, mid);
        auto [v2, e2] = detail::gk15(g, mid, p.b);
        total += v1 + v2 - p.value;
        total_err += e1 + e2 - p.error;
        heap.push({p.a, mid, v1, e1, p.domain});
        heap.push({mid, p.b, v2, e2, p.domain});
        ++subdivisions;
    }
    // Resum to shed accumulated update drift.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        frozen.push_back(heap.top());
        heap.pop();
    }
    for (const auto& p : frozen) {
        total += p.value;
        total_err += p.error;
    }
    res.value = total;
    res.abs_error = total_err;
    res.converged = std::isfinite(total) && total_err <= tolerance();
    return res;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    return integrate(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights mu0 * v0^2.
inline GaussRule gauss_from_jacobi(const std::vector<double>& diag, const std::vector<double>& offdiag, double mu0) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::VectorXd d(n), e(std::max<Eigen::Index>(n - 1, 0));
    for (Eigen::Index i = 0; i < n; ++i) d(i) = diag[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) e(i) = offdiag[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_from_jacobi: eigensolver failed");
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        r.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        r.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return r;
}

namespace detail {
template <class Build>
const GaussRule& cached_rule(char family, int n, double alpha, Build&& build) {
    static std::mutex m;
    static std::map<std::tuple<char, int, double>, GaussRule> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_tuple(family, n, alpha);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build()).first;
    return it->second;
}
}  // namespace detail

// Weight x^alpha e^{-x} on [0, inf).
inline const GaussRule& gauss_laguerre(int n, double alpha = 0.0) {
    if (n < 1 || alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: need n >= 1, alpha > -1");
    return detail::cached_rule('L', n, alpha, [&] {
        std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            d[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
            e[static_cast<std::size_t>(k)] = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        }
        return gauss_from_jacobi(d, e, std::tgamma(alpha + 1.0));
    });
}

// Weight e^{-x^2} on the real line.
inline const GaussRule& gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
    return detail::cached_rule('H', n, 0.0, [&] {
        std::vector<double> d(static_cast<std::size_t>(n), 0.0), e(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = std::sqrt(0.5 * (k + 1.0));
        return gauss_from_jacobi(d, e, std::sqrt(M_PI));
    });
}

// Unit weight on [-1, 1].
inline const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    return detail::cached_rule('P', n, 0.0, [&] {
        std::vector<double> d(static_cast<std::size_t>(n), 0.0), e(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double j = k + 1.0;
            e[static_cast<std::size_t>(k)] = j / std::sqrt(4.0 * j * j - 1.0);
        }
        return gauss_from_jacobi(d, e, 2.0);
    });
}

}  // namespace nlfiber::quad
