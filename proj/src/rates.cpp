// rates.cpp — closed forms built from the unified integral
//   I(w; z) = eta·(-1/z + w·e^{-wz}·Ei(wz)),  z = 1/omega_c (I1) or
//   z = 1/omega_c - it (I2), together with its first two w-derivatives
// which drive the near-degenerate Taylor fallback.

#include "cgsme/rates.hpp"

#include <cmath>

#include "cgsme/expint.hpp"
#include "cgsme/quad.hpp"

namespace cgsme {

namespace {

using Complex = std::complex<double>;

constexpr Complex kI(0.0, 1.0);

double degeneracy_threshold(double omega, double omega_p) {
    return 1e-6 * std::max(std::abs(omega), std::abs(omega_p));
}

void require_positive(double omega, const char* who) {
    if (!(omega > 0.0)) throw DomainError(std::string(who) + ": omega must be > 0");
}

Complex unified_i(const BathSpec& spec, double omega, Complex z) {
    const Complex wz = omega * z;
    return spec.eta * (-1.0 / z + omega * std::exp(-wz) * expint_ei(wz));
}

Complex unified_i_d1(const BathSpec& spec, double omega, Complex z) {
    const Complex wz = omega * z;
    return spec.eta * ((1.0 - wz) * std::exp(-wz) * expint_ei(wz) + 1.0);
}

Complex unified_i_d2(const BathSpec& spec, double omega, Complex z) {
    const Complex wz = omega * z;
    return spec.eta * ((wz - 2.0) * z * std::exp(-wz) * expint_ei(wz) + (1.0 - wz) / omega);
}

Complex zeta2(const BathSpec& spec, double t) { return Complex(1.0 / spec.omega_c, -t); }

Complex phase(double a) { return Complex(std::cos(a), std::sin(a)); }

// First-order Taylor coefficients of b and S in (w' - w) about the diagonal.
Complex b_taylor_d1(const BathSpec& spec, double omega, double t) {
    const Complex z1(1.0 / spec.omega_c, 0.0);
    const Complex z2 = zeta2(spec, t);
    const Complex i1d1 = unified_i_d1(spec, omega, z1);
    const Complex i1d2 = unified_i_d2(spec, omega, z1);
    const Complex i2d1 = unified_i_d1(spec, omega, z2);
    const Complex i2d2 = unified_i_d2(spec, omega, z2);
    return -i1d2 - kI * t * i1d1 +
           phase(omega * t) * (kI * t * std::conj(i2d1) + 0.5 * std::conj(i2d2)) +
           phase(-omega * t) * 0.5 * i2d2;
}

Complex s_taylor_d1(const BathSpec& spec, double omega, double t) {
    const Complex z1(1.0 / spec.omega_c, 0.0);
    const Complex z2 = zeta2(spec, t);
    const Complex i1 = unified_i(spec, omega, z1);
    const Complex i1d1 = unified_i_d1(spec, omega, z1);
    const Complex i2d1 = unified_i_d1(spec, omega, z2);
    const Complex i2d2 = unified_i_d2(spec, omega, z2);
    return 0.5 * kI *
           (t * t * i1 - kI * t * i1d1 + 0.5 * phase(-omega * t) * i2d2 -
            phase(omega * t) * (kI * t * std::conj(i2d1) + 0.5 * std::conj(i2d2)));
}

} // namespace

double RateTensor::min_gamma_eigenvalue() const {
    const double a = gamma(0, 0).real();
    const double d = gamma(1, 1).real();
    const double off = std::abs(gamma(0, 1));
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + off * off);
}

double rate_i1(const BathSpec& spec, double omega) {
    require_positive(omega, "rate_i1");
    return unified_i(spec, omega, Complex(1.0 / spec.omega_c, 0.0)).real();
}

Complex rate_i2(const BathSpec& spec, double omega, double t) {
    require_positive(omega, "rate_i2");
    return unified_i(spec, omega, zeta2(spec, t));
}

Complex b_offdiag(const BathSpec& spec, double omega, double omega_p, double t) {
    require_positive(omega, "b_offdiag");
    require_positive(omega_p, "b_offdiag");
    const double delta = omega_p - omega;
    if (std::abs(delta) <= degeneracy_threshold(omega, omega_p))
        throw DegenerateFrequencies("b_offdiag: |w - w'| below degeneracy threshold");
    const double i1w = rate_i1(spec, omega);
    const double i1wp = rate_i1(spec, omega_p);
    const Complex i2w = rate_i2(spec, omega, t);
    const Complex i2wp = rate_i2(spec, omega_p, t);
    return ((1.0 + phase(delta * t)) * (i1w - i1wp) +
            phase(omega_p * t) * (std::conj(i2wp) - std::conj(i2w)) +
            phase(-omega * t) * (i2wp - i2w)) /
           delta;
}

Complex s_offdiag(const BathSpec& spec, double omega, double omega_p, double t) {
    require_positive(omega, "s_offdiag");
    require_positive(omega_p, "s_offdiag");
    const double delta = omega_p - omega;
    if (std::abs(delta) <= degeneracy_threshold(omega, omega_p))
        throw DegenerateFrequencies("s_offdiag: |w - w'| below degeneracy threshold");
    const double i1w = rate_i1(spec, omega);
    const double i1wp = rate_i1(spec, omega_p);
    const Complex i2w = rate_i2(spec, omega, t);
    const Complex i2wp = rate_i2(spec, omega_p, t);
    return -0.5 * kI / (-delta) *
           ((1.0 - phase(delta * t)) * (i1w + i1wp) + phase(-omega * t) * (i2wp - i2w) +
            phase(omega_p * t) * (std::conj(i2w) - std::conj(i2wp)));
}

double b_diag(const BathSpec& spec, double omega, double t) {
    require_positive(omega, "b_diag");
    const double x = omega / spec.omega_c;
    const Complex ei_plus = expint_ei(Complex(x, omega * t));
    const double ei_zero = expint_ei(Complex(x, 0.0)).real();
    const double bracket = 2.0 * ((Complex(1.0 - x, -omega * t) * ei_plus).real() +
                                  (x - 1.0) * ei_zero);
    const double s = std::sin(0.5 * omega * t);
    return spec.eta * (std::exp(-x) * bracket - 4.0 * s * s);
}

double s_diag(const BathSpec& spec, double omega, double t) {
    require_positive(omega, "s_diag");
    const double x = omega / spec.omega_c;
    const Complex ei_plus = expint_ei(Complex(x, omega * t));
    // I3(w,t) = eta e^{-x} [(1-x) Im Ei+ - wt Re Ei+] + eta sin(wt)
    const double i3 = spec.eta * (std::exp(-x) * ((1.0 - x) * ei_plus.imag() -
                                                  omega * t * ei_plus.real()) +
                                  std::sin(omega * t));
    return t * rate_i1(spec, omega) + i3;
}

Complex b_entry(const BathSpec& spec, double omega, double omega_p, double t) {
    const double delta = omega_p - omega;
    if (std::abs(delta) > degeneracy_threshold(omega, omega_p))
        return b_offdiag(spec, omega, omega_p, t);
    return b_diag(spec, omega, t) + delta * b_taylor_d1(spec, omega, t);
}

Complex s_entry(const BathSpec& spec, double omega, double omega_p, double t) {
    const double delta = omega_p - omega;
    if (std::abs(delta) > degeneracy_threshold(omega, omega_p))
        return s_offdiag(spec, omega, omega_p, t);
    return s_diag(spec, omega, t) + delta * s_taylor_d1(spec, omega, t);
}

RateTensor rate_tensor(const BathSpec& spec, const VSystemSpec& sys, double dt,
                       RateConvention convention) {
    spec.validate();
    sys.validate();
    if (!(dt > 0.0)) throw DomainError("rate_tensor: dt must be > 0");

    const double w1 = sys.omega1;
    const double w2 = sys.omega2;
    const double scale = spec.g / dt;

    auto diag = [&](double w) {
        double b = b_diag(spec, w, dt);
        if (convention == RateConvention::benchmark) {
            const double s = std::sin(0.5 * w * dt);
            b += 8.0 * spec.eta * s * s;
        }
        return b;
    };

    RateTensor rt;
    rt.dt = dt;
    rt.frequencies = {w1, w2};

    rt.gamma(0, 0) = scale * diag(w1);
    rt.gamma(1, 1) = scale * diag(w2);
    rt.gamma(0, 1) = scale * b_entry(spec, w1, w2, dt);
    rt.gamma(1, 0) = std::conj(rt.gamma(0, 1));

    rt.lamb(0, 0) = scale * s_diag(spec, w1, dt);
    rt.lamb(1, 1) = scale * s_diag(spec, w2, dt);
    rt.lamb(0, 1) = scale * s_entry(spec, w1, w2, dt);
    rt.lamb(1, 0) = std::conj(rt.lamb(0, 1));
    return rt;
}

// --------------------------- quadrature oracles -----------------------------

namespace {

// Overlap factor ∫ e^{i(w'-w)s} ds over the s-range where both time
// arguments stay inside [0, t]; u = s - s'.
Complex overlap_full(double delta, double t, double u) {
    const double lo = std::max(0.0, u);
    const double hi = std::min(t, t + u);
    if (std::abs(delta) < 1e-14) return Complex(hi - lo, 0.0);
    return (phase(delta * hi) - phase(delta * lo)) / (kI * delta);
}

Complex overlap_tail(double delta, double t, double u) {
    // ∫_u^t e^{i delta s} ds
    if (std::abs(delta) < 1e-14) return Complex(t - u, 0.0);
    return (phase(delta * t) - phase(delta * u)) / (kI * delta);
}

quad::Options oracle_options(const BathSpec& spec, double t, double rel_tol) {
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-14 * spec.eta * spec.omega_c * spec.omega_c * (1.0 + t);
    return opt;
}

} // namespace

Complex b_quadrature_oracle(const BathSpec& spec, double omega, double omega_p, double t,
                            double rel_tol) {
    if (t == 0.0) return Complex(0.0, 0.0);
    const double delta = omega_p - omega;
    auto f = [&](double u) {
        return phase(omega * u) * corr_zero_t(spec, u) * overlap_full(delta, t, u);
    };
    return quad::integrate(f, -t, t, oracle_options(spec, t, rel_tol));
}

Complex s_quadrature_oracle(const BathSpec& spec, double omega, double omega_p, double t,
                            double rel_tol) {
    if (t == 0.0) return Complex(0.0, 0.0);
    const double delta = omega_p - omega;
    auto f = [&](double u) {
        const Complex k = corr_zero_t(spec, u);
        return overlap_tail(delta, t, u) *
               (phase(omega * u) * k - phase(-omega_p * u) * std::conj(k));
    };
    return -0.5 * kI * quad::integrate(f, 0.0, t, oracle_options(spec, t, rel_tol));
}

Complex b_oneside_oracle(const BathSpec& spec, double omega, double omega_p, double t,
                         double rel_tol) {
    if (t == 0.0) return Complex(0.0, 0.0);
    const double delta = omega_p - omega;
    auto f = [&](double u) {
        return phase(omega * u) * corr_zero_t(spec, u) * overlap_tail(delta, t, u);
    };
    return quad::integrate(f, 0.0, t, oracle_options(spec, t, rel_tol));
}

Complex b_quadrature_oracle_2d(const BathSpec& spec, double omega, double omega_p, double t) {
    if (t == 0.0) return Complex(0.0, 0.0);
    // panel length resolves both the kernel scale 1/omega_c and the phases
    const double fmax = std::max({std::abs(omega), std::abs(omega_p), spec.omega_c});
    const int panels = std::max(8, static_cast<int>(std::ceil(t * fmax)));
    const auto& rule = quad::detail::make_gauss(12);
    const double hp = t / panels;
    Complex total(0.0, 0.0);
    for (int ps = 0; ps < panels; ++ps) {
        for (int pq = 0; pq < panels; ++pq) {
            const double s0 = ps * hp, q0 = pq * hp;
            Complex cell(0.0, 0.0);
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const double s = s0 + 0.5 * hp * (1.0 + rule.x[i]);
                Complex row(0.0, 0.0);
                for (std::size_t j = 0; j < rule.x.size(); ++j) {
                    const double sp = q0 + 0.5 * hp * (1.0 + rule.x[j]);
                    row += rule.w[j] * phase(omega_p * s - omega * sp) *
                           corr_zero_t(spec, s - sp);
                }
                cell += rule.w[i] * row;
            }
            total += 0.25 * hp * hp * cell;
        }
    }
    return total;
}

double i1_pv_oracle(const BathSpec& spec, double omega, double rel_tol) {
    require_positive(omega, "i1_pv_oracle");
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-14 * spec.eta * spec.omega_c * spec.omega_c;
    const double upper = omega + 60.0 * spec.omega_c;
    auto j = [&](double v) { return Complex(spectral_density(spec, v), 0.0); };
    // I1 = ∫ J(v)/(w - v) dv = -PV ∫ J(v)/(v - w) dv
    return -quad::pv_integrate(j, 0.0, upper, omega, opt).real();
}

Complex i2_pv_oracle(const BathSpec& spec, double omega, double t, double rel_tol) {
    require_positive(omega, "i2_pv_oracle");
    quad::Options opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = 1e-14 * spec.eta * spec.omega_c * spec.omega_c;
    const double upper = omega + 60.0 * spec.omega_c;
    auto j = [&](double v) { return spectral_density(spec, v) * phase(v * t); };
    return -quad::pv_integrate(j, 0.0, upper, omega, opt);
}

std::vector<RateScanPoint> rate_scan(const BathSpec& spec, const VSystemSpec& sys,
                                     const std::vector<double>& dts,
                                     RateConvention convention) {
    std::vector<RateScanPoint> out;
    out.reserve(dts.size());
    for (double dt : dts) {
        const RateTensor rt = rate_tensor(spec, sys, dt, convention);
        out.push_back({dt, rt.gamma, rt.lamb});
    }
    return out;
}

} // namespace cgsme
