// quad.hpp — adaptive Gauss–Legendre quadrature for complex integrands,
// with principal-value and semi-infinite helpers used by the rate oracles.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

#include "cgsme/errors.hpp"

namespace cgsme::quad {

using Complex = std::complex<double>;

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    long max_intervals = 400000; // refinement budget
};

namespace detail {

struct GaussRule {
    std::vector<double> x; // nodes on (-1, 1)
    std::vector<double> w;
};

// Gauss–Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule make_gauss(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

inline const GaussRule& gauss15() {
    static const GaussRule r = make_gauss(15);
    return r;
}

inline const GaussRule& gauss7() {
    static const GaussRule r = make_gauss(7);
    return r;
}

template <class F>
Complex gl(const F& f, double a, double b, const GaussRule& r) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
    return h * s;
}

struct Interval {
    double a, b;
    Complex value; // GL15
    double error;  // |GL15 - GL7|
    bool operator<(const Interval& o) const { return error < o.error; }
};

template <class F>
Interval eval_interval(const F& f, double a, double b) {
    Interval iv;
    iv.a = a;
    iv.b = b;
    iv.value = gl(f, a, b, gauss15());
    iv.error = std::abs(iv.value - gl(f, a, b, gauss7()));
    return iv;
}

} // namespace detail

// Globally adaptive integration of a complex integrand on [a, b].
// Worst intervals are bisected until the summed error estimate meets the
// tolerance; throws ConvergenceError when the budget runs out first.
template <class F>
Complex integrate(const F& f, double a, double b, const Options& opt = {}) {
    if (a == b) return Complex(0.0, 0.0);
    std::priority_queue<detail::Interval> heap;
    auto first = detail::eval_interval(f, a, b);
    Complex total = first.value;
    double total_err = first.error;
    heap.push(first);
    long n = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (n >= opt.max_intervals || heap.empty())
            throw ConvergenceError("quad::integrate: interval budget exhausted, error " +
                                   std::to_string(total_err));
        detail::Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) continue; // interval at double resolution
        auto left = detail::eval_interval(f, worst.a, mid);
        auto right = detail::eval_interval(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
    }
    return total;
}

template <class F>
double integrate_real(const F& f, double a, double b, const Options& opt = {}) {
    return integrate([&](double x) { return Complex(f(x), 0.0); }, a, b, opt).real();
}

// ∫_a^∞ f — rational map x = a + scale·u/(1-u), suitable for integrands with
// power-law or exponential falloff on the scale `scale`.
template <class F>
Complex integrate_to_inf(const F& f, double a, double scale, const Options& opt = {}) {
    auto g = [&](double u) {
        const double one_m = 1.0 - u;
        const double x = a + scale * u / one_m;
        return f(x) * (scale / (one_m * one_m));
    };
    return integrate(g, 0.0, 1.0, opt);
}

// Cauchy principal value of ∫_a^b g(x)/(x - pole) dx with a < pole < b.
// The symmetric window around the pole is integrated as
// [g(pole+s) - g(pole-s)]/s, which is smooth for smooth g.
template <class G>
Complex pv_integrate(const G& g, double a, double b, double pole, const Options& opt = {}) {
    if (!(a < pole && pole < b))
        throw DomainError("quad::pv_integrate: pole must lie strictly inside [a, b]");
    const double d = 0.5 * std::min(pole - a, b - pole);
    Complex result(0.0, 0.0);
    if (a < pole - d)
        result += integrate([&](double x) { return g(x) / (x - pole); }, a, pole - d, opt);
    if (pole + d < b)
        result += integrate([&](double x) { return g(x) / (x - pole); }, pole + d, b, opt);
    result += integrate([&](double s) { return (g(pole + s) - g(pole - s)) / s; }, 0.0, d, opt);
    return result;
}

// Recursive adaptive Simpson. Kept as an independent node family for
// cross-checking the Gauss-based results.
namespace detail {
template <class F>
Complex simpson_step(const F& f, double a, double b, Complex fa, Complex fm, Complex fb,
                     Complex whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const Complex flm = f(0.5 * (a + m));
    const Complex frm = f(0.5 * (m + b));
    const Complex left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Complex right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Complex delta = left + right - whole;
    if (depth <= 0) throw ConvergenceError("quad::integrate_simpson: max depth reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

template <class F>
Complex integrate_simpson(const F& f, double a, double b, double tol = 1e-11,
                          int max_depth = 55) {
    if (a == b) return Complex(0.0, 0.0);
    const Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace cgsme::quad
