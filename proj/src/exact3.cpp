// exact3.cpp — Volterra RK4 with Pouzet-style stage treatment of the memory
// integral.
//
// Working variables are the frame-shifted amplitudes d_j(t) = e^{-i w_j t} c_j(t):
//   d1' = -i w1 d1 - g (B * w),   d2' = -i w2 d2 - g (B * w),   w = d1 + d2,
// so both channels share a single convolution with the bare kernel B(t,0).
// Kernel values are tabulated once on the integer and half grids; the lag
// integral over [0, t_n] is evaluated per step (the O(N²) part) and the
// [t_n, t_n + theta*h] remainders use the RK4 tableau couplings.

#include "cgsme/exact3.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

namespace cgsme {

namespace {

using Complex = std::complex<double>;

struct Pair2 {
    Complex d1, d2;
};

// Deterministic block-partial reduction of the lag sums: partial results per
// fixed-size block are combined in block order, so the result is identical
// for any worker count.
constexpr std::size_t kBlock = 16384;
constexpr std::size_t kParallelThreshold = 49152;

struct LagSums {
    double half_re = 0.0, half_im = 0.0; // kernel offset theta = 1/2
    double one_re = 0.0, one_im = 0.0;   // kernel offset theta = 1
};

LagSums lag_block(const double* br, const double* bi, const double* bhr, const double* bhi,
                  const double* wr, const double* wi, std::size_t n, std::size_t m0,
                  std::size_t m1) {
    LagSums s;
    for (std::size_t m = m0; m < m1; ++m) {
        const std::size_t l = n - m;
        const double xr = wr[m], xi = wi[m];
        const double hr = bhr[l], hi = bhi[l];
        const double or_ = br[l + 1], oi = bi[l + 1];
        s.half_re += hr * xr - hi * xi;
        s.half_im += hr * xi + hi * xr;
        s.one_re += or_ * xr - oi * xi;
        s.one_im += or_ * xi + oi * xr;
    }
    return s;
}

class LagWorkers {
public:
    LagWorkers() {
        unsigned hw = std::thread::hardware_concurrency();
        n_workers_ = hw > 1 ? std::min(hw, 8u) - 1 : 0;
        for (unsigned i = 0; i < n_workers_; ++i)
            threads_.emplace_back([this, i] { worker_loop(i); });
    }

    ~LagWorkers() {
        {
            std::lock_guard<std::mutex> lk(mu_);
            stop_ = true;
            ++generation_;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    // Computes the two lag sums over m = 0..n inclusive.
    LagSums run(const double* br, const double* bi, const double* bhr, const double* bhi,
                const double* wr, const double* wi, std::size_t n) {
        const std::size_t count = n + 1;
        const std::size_t blocks = (count + kBlock - 1) / kBlock;
        if (n_workers_ == 0 || count < kParallelThreshold) {
            return lag_block(br, bi, bhr, bhi, wr, wi, n, 0, count);
        }
        partials_.assign(blocks, LagSums{});
        br_ = br; bi_ = bi; bhr_ = bhr; bhi_ = bhi; wr_ = wr; wi_ = wi;
        n_ = n;
        next_block_.store(0, std::memory_order_relaxed);
        pending_.store(static_cast<long>(blocks), std::memory_order_relaxed);
        {
            std::lock_guard<std::mutex> lk(mu_);
            ++generation_;
        }
        cv_.notify_all();
        drain();
        {
            std::unique_lock<std::mutex> lk(done_mu_);
            done_cv_.wait(lk, [this] { return pending_.load(std::memory_order_acquire) == 0; });
        }
        LagSums total;
        for (const LagSums& p : partials_) {
            total.half_re += p.half_re;
            total.half_im += p.half_im;
            total.one_re += p.one_re;
            total.one_im += p.one_im;
        }
        return total;
    }

private:
    void drain() {
        for (;;) {
            const std::size_t b = next_block_.fetch_add(1, std::memory_order_relaxed);
            if (b >= partials_.size()) return;
            const std::size_t m0 = b * kBlock;
            const std::size_t m1 = std::min(m0 + kBlock, n_ + 1);
            partials_[b] = lag_block(br_, bi_, bhr_, bhi_, wr_, wi_, n_, m0, m1);
            if (pending_.fetch_sub(1, std::memory_order_acq_rel) == 1) {
                std::lock_guard<std::mutex> lk(done_mu_);
                done_cv_.notify_one();
            }
        }
    }

    void worker_loop(unsigned) {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lk(mu_);
                cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
                if (stop_) return;
                seen = generation_;
            }
            drain();
        }
    }

    unsigned n_workers_ = 0;
    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::uint64_t generation_ = 0;
    bool stop_ = false;

    std::mutex done_mu_;
    std::condition_variable done_cv_;
    std::atomic<std::size_t> next_block_{0};
    std::atomic<long> pending_{0};
    std::vector<LagSums> partials_;

    const double *br_ = nullptr, *bi_ = nullptr, *bhr_ = nullptr, *bhi_ = nullptr;
    const double *wr_ = nullptr, *wi_ = nullptr;
    std::size_t n_ = 0;
};

} // namespace

Trajectory solve_exact(const VSystemSpec& sys, const BathSpec& bath,
                       const AmplitudeState& psi0, double t_max,
                       const SolverSettings& settings,
                       std::vector<AmplitudeState>* amplitudes_out) {
    sys.validate();
    bath.validate();
    const double h = settings.step;
    if (!(h > 0.0)) throw DomainError("solve_exact: step must be > 0");
    if (!(t_max >= h)) throw DomainError("solve_exact: t_max must be >= step");
    const double fmax = std::max({sys.omega1, sys.omega2, bath.omega_c});
    if (h > 0.1 / fmax)
        throw StepSizeError("solve_exact: step exceeds 0.1/max(omega1, omega2, omega_c)");
    const int k = std::max(1, settings.subsample);
    if (psi0.total_norm2() > 1.0 + 1e-9)
        throw DomainError("solve_exact: initial amplitudes exceed unit norm");

    // grid: N steps, N a multiple of the subsample stride, endpoint >= t_max
    std::size_t n_steps = static_cast<std::size_t>(std::ceil(t_max / h - 1e-12));
    n_steps = ((n_steps + k - 1) / k) * k;

    // kernel tables on the integer and half grids
    std::vector<double> br(n_steps + 2), bi(n_steps + 2), bhr(n_steps + 1), bhi(n_steps + 1);
    for (std::size_t l = 0; l <= n_steps + 1; ++l) {
        const Complex v = corr_zero_t(bath, l * h);
        br[l] = v.real();
        bi[l] = v.imag();
    }
    for (std::size_t l = 0; l <= n_steps; ++l) {
        const Complex v = corr_zero_t(bath, (l + 0.5) * h);
        bhr[l] = v.real();
        bhi[l] = v.imag();
    }
    const Complex b_zero(br[0], bi[0]);
    const Complex b_half(bhr[0], bhi[0]);
    const Complex b_one(br[1], bi[1]);

    std::vector<double> wr(n_steps + 1), wi(n_steps + 1);

    const bool trap = settings.scheme == ConvolutionScheme::trapezoid;
    const double g = bath.g;
    const Complex iw1(0.0, sys.omega1);
    const Complex iw2(0.0, sys.omega2);
    const double norm_budget = 1.0 + 1e-9;

    Pair2 d{psi0.c1, psi0.c2};

    Trajectory traj;
    traj.picture = Picture::interaction;
    traj.times.reserve(n_steps / k + 1);
    traj.states.reserve(n_steps / k + 1);
    if (amplitudes_out) {
        amplitudes_out->clear();
        amplitudes_out->reserve(n_steps / k + 1);
    }

    auto store = [&](std::size_t n) {
        const double t = n * h;
        const Complex c1 = std::exp(Complex(0.0, sys.omega1 * t)) * d.d1;
        const Complex c2 = std::exp(Complex(0.0, sys.omega2 * t)) * d.d2;
        const AmplitudeState amp{psi0.c0, c1, c2};
        traj.times.push_back(t);
        traj.states.push_back(amplitudes_to_density(amp));
        if (amplitudes_out) amplitudes_out->push_back(amp);
    };

    LagWorkers workers;
    Complex lag_one_prev(0.0, 0.0);

    store(0);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const Complex w_n = d.d1 + d.d2;
        wr[n] = w_n.real();
        wi[n] = w_n.imag();

        // lag over [0, t_n] at the three kernel offsets; theta = 0 follows
        // from the previous step's theta = 1 sum
        Complex lag0, lag_half, lag_one;
        if (n == 0) {
            lag0 = Complex(0.0, 0.0);
            lag_half = Complex(0.0, 0.0);
            lag_one = Complex(0.0, 0.0);
        } else {
            if (trap) {
                lag0 = lag_one_prev +
                       h * (0.5 * b_one * Complex(wr[n - 1], wi[n - 1]) + 0.5 * b_zero * w_n);
            } else {
                lag0 = lag_one_prev + h * b_one * Complex(wr[n - 1], wi[n - 1]);
            }
            const LagSums s = workers.run(br.data(), bi.data(), bhr.data(), bhi.data(),
                                          wr.data(), wi.data(), n);
            Complex sum_half(s.half_re, s.half_im);
            Complex sum_one(s.one_re, s.one_im);
            if (trap) {
                // endpoints m = 0 and m = n carry half weight
                sum_half -= 0.5 * (Complex(bhr[n], bhi[n]) * Complex(wr[0], wi[0]) +
                                   b_half * w_n);
                sum_one -= 0.5 * (Complex(br[n + 1], bi[n + 1]) * Complex(wr[0], wi[0]) +
                                  b_one * w_n);
            } else {
                // left Riemann: m = n excluded
                sum_half -= b_half * w_n;
                sum_one -= b_one * w_n;
            }
            lag_half = h * sum_half;
            lag_one = h * sum_one;
        }

        // RK4 stages with tableau-consistent memory increments
        const Complex v1 = lag0;
        const Complex k1_1 = -iw1 * d.d1 - g * v1;
        const Complex k1_2 = -iw2 * d.d2 - g * v1;

        const Complex y2_1 = d.d1 + 0.5 * h * k1_1;
        const Complex y2_2 = d.d2 + 0.5 * h * k1_2;
        const Complex v2 = lag_half + 0.5 * h * b_half * w_n;
        const Complex k2_1 = -iw1 * y2_1 - g * v2;
        const Complex k2_2 = -iw2 * y2_2 - g * v2;

        const Complex y3_1 = d.d1 + 0.5 * h * k2_1;
        const Complex y3_2 = d.d2 + 0.5 * h * k2_2;
        const Complex v3 = trap ? lag_half + 0.5 * h * b_zero * (y2_1 + y2_2)
                                : lag_half + 0.5 * h * b_half * w_n;
        const Complex k3_1 = -iw1 * y3_1 - g * v3;
        const Complex k3_2 = -iw2 * y3_2 - g * v3;

        const Complex y4_1 = d.d1 + h * k3_1;
        const Complex y4_2 = d.d2 + h * k3_2;
        const Complex v4 = trap ? lag_one + h * b_half * (y3_1 + y3_2)
                                : lag_one + h * b_one * w_n;
        const Complex k4_1 = -iw1 * y4_1 - g * v4;
        const Complex k4_2 = -iw2 * y4_2 - g * v4;

        d.d1 += h / 6.0 * (k1_1 + 2.0 * k2_1 + 2.0 * k3_1 + k4_1);
        d.d2 += h / 6.0 * (k1_2 + 2.0 * k2_2 + 2.0 * k3_2 + k4_2);
        lag_one_prev = lag_one;

        const double total = std::norm(psi0.c0) + std::norm(d.d1) + std::norm(d.d2);
        if (!(total <= norm_budget) || !std::isfinite(total))
            throw NonUnitaryError("solve_exact: amplitude norm left the physical sector at t = " +
                                  std::to_string((n + 1) * h));

        if ((n + 1) % k == 0) store(n + 1);
    }
    return traj;
}

} // namespace cgsme
