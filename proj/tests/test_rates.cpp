#include <doctest.h>

#include <cmath>

#include "cgsme/rates.hpp"
#include "support/oracles.hpp"

using namespace cgsme;
using Complex = std::complex<double>;

namespace {
const BathSpec kBath{1.0, 1.0, 1.0, std::numeric_limits<double>::infinity()};
}

TEST_SUITE_BEGIN("rates");

TEST_CASE("I1 against principal-value quadrature") {
    for (double w : {0.01, 0.095, 0.1, 0.105, 0.4, 2.0}) {
        CHECK(rate_i1(kBath, w) == doctest::Approx(i1_pv_oracle(kBath, w)).epsilon(1e-8));
    }
    // pole sits mostly below the spectral weight at small w
    CHECK(rate_i1(kBath, 0.01) < 0.0);
    CHECK(i1_pv_oracle(kBath, 0.01) < 0.0);
    // decays away at large w
    CHECK(std::abs(rate_i1(kBath, 50.0)) < 0.05);
    CHECK_THROWS_AS((void)rate_i1(kBath, 0.0), DomainError);
}

TEST_CASE("I2 against principal-value quadrature") {
    // t = 0 reduces to I1 exactly
    for (double w : {0.05, 0.1, 0.4}) {
        const Complex v = rate_i2(kBath, w, 0.0);
        CHECK(v.real() == doctest::Approx(rate_i1(kBath, w)).epsilon(1e-14));
        CHECK(v.imag() == doctest::Approx(0.0));
    }
    for (double w : {0.095, 0.105, 0.4}) {
        for (double t : {1.0, 13.0, 63.7}) {
            const Complex got = rate_i2(kBath, w, t);
            const Complex want = i2_pv_oracle(kBath, w, t);
            CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
        }
    }
    CHECK_THROWS_AS((void)rate_i2(kBath, -0.1, 1.0), DomainError);
}

TEST_CASE("b closed forms against the reduced quadrature oracle") {
    // acceptance-grade grid: >= 25 (w, w', t) combinations
    const double ws[] = {0.05, 0.095, 0.105, 0.2, 0.4};
    const double ts[] = {1.0, 13.0, 63.7, 124.0, 400.0};
    for (double w : ws) {
        for (double t : ts) {
            const double got = b_diag(kBath, w, t);
            const Complex want = b_quadrature_oracle(kBath, w, w, t);
            CHECK(std::abs(got - want.real()) <= 1e-8 * std::abs(want) + 1e-12);
            CHECK(std::abs(want.imag()) < 1e-9 * std::abs(want) + 1e-12);
            CHECK(got >= 0.0); // equals a manifestly nonnegative integral
        }
    }
    for (double t : ts) {
        const Complex got = b_offdiag(kBath, 0.095, 0.105, t);
        const Complex want = b_quadrature_oracle(kBath, 0.095, 0.105, t);
        CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
    }
    // a wider off-diagonal pair
    const Complex got = b_offdiag(kBath, 0.1, 0.4, 63.7);
    const Complex want = b_quadrature_oracle(kBath, 0.1, 0.4, 63.7);
    CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
}

TEST_CASE("b short-time scaling and swap symmetry") {
    // |b| vanishes like O(t^2): quartering t cuts it ~16x
    const double b1 = std::abs(b_offdiag(kBath, 0.095, 0.105, 0.02));
    const double b2 = std::abs(b_offdiag(kBath, 0.095, 0.105, 0.005));
    CHECK(b1 / b2 == doctest::Approx(16.0).epsilon(0.05));
    CHECK(std::abs(b_diag(kBath, 0.1, 1e-3)) < 2e-6);

    for (double t : {3.0, 63.7}) {
        const Complex ab = b_offdiag(kBath, 0.095, 0.105, t);
        const Complex ba = b_offdiag(kBath, 0.105, 0.095, t);
        CHECK(std::abs(ba - std::conj(ab)) <= 1e-12 * std::abs(ab));
    }
}

TEST_CASE("S closed forms against the reduced quadrature oracle") {
    const double ws[] = {0.05, 0.095, 0.105, 0.4};
    const double ts[] = {1.0, 13.0, 63.7, 124.0};
    for (double w : ws) {
        for (double t : ts) {
            const double got = s_diag(kBath, w, t);
            const Complex want = s_quadrature_oracle(kBath, w, w, t);
            CHECK(std::abs(got - want.real()) <= 1e-8 * std::abs(want) + 1e-12);
            CHECK(std::abs(want.imag()) < 1e-9 * std::abs(want) + 1e-12);
        }
    }
    for (double t : ts) {
        const Complex got = s_offdiag(kBath, 0.095, 0.105, t);
        const Complex want = s_quadrature_oracle(kBath, 0.095, 0.105, t);
        CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
    }
    // hermiticity and the short-time limit
    const Complex ab = s_offdiag(kBath, 0.095, 0.105, 63.7);
    const Complex ba = s_offdiag(kBath, 0.105, 0.095, 63.7);
    CHECK(std::abs(ba - std::conj(ab)) <= 1e-12 * std::abs(ab));
    CHECK(std::abs(s_offdiag(kBath, 0.095, 0.105, 1e-3)) < 2e-6);
    CHECK(std::abs(s_diag(kBath, 0.1, 1e-3)) < 2e-6);
}

TEST_CASE("reduced oracle cross-checks") {
    // the 2-D tensor evaluation agrees with the 1-D reduction
    for (double t : {3.0, 20.0}) {
        const Complex a = b_quadrature_oracle(kBath, 0.095, 0.105, t);
        const Complex b = b_quadrature_oracle_2d(kBath, 0.095, 0.105, t);
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
    }
    CHECK(std::abs(b_quadrature_oracle(kBath, 0.1, 0.2, 0.0)) == 0.0);

    // one-sided integrals recombine into b
    for (double t : {5.0, 63.7}) {
        const Complex oneside = b_oneside_oracle(kBath, 0.095, 0.105, t);
        const Complex swapped = b_oneside_oracle(kBath, 0.105, 0.095, t);
        const Complex b = b_quadrature_oracle(kBath, 0.095, 0.105, t);
        CHECK(std::abs(oneside + std::conj(swapped) - b) <= 1e-8 * std::abs(b));
    }
}

TEST_CASE("degenerate handling") {
    CHECK_THROWS_AS((void)b_offdiag(kBath, 0.1, 0.1 + 1e-9, 10.0), DegenerateFrequencies);
    CHECK_THROWS_AS((void)s_offdiag(kBath, 0.1, 0.1, 10.0), DegenerateFrequencies);

    // Taylor fallback continues the closed form through the threshold
    const double w = 0.1, t = 63.7;
    const double eps = 1e-6 * 0.1;
    const Complex series = b_entry(kBath, w, w + 0.5 * eps, t);
    const Complex closed = b_offdiag(kBath, w, w + 4.0 * eps, t);
    CHECK(std::abs(series - b_diag(kBath, w, t)) < 1e-4 * std::abs(series));
    CHECK(std::abs(series - closed) < 1e-4 * std::abs(closed));
    const Complex s_series = s_entry(kBath, w, w + 0.5 * eps, t);
    const Complex s_closed = s_offdiag(kBath, w, w + 4.0 * eps, t);
    CHECK(std::abs(s_series - s_closed) < 1e-4 * std::abs(s_closed));

    // oracle agreement inside the degenerate window; at this offset the
    // linear Taylor term still contributes ~1e-5 relative, so the match
    // pins the first-order coefficient too
    const Complex want = b_quadrature_oracle(kBath, w, w + 0.5 * eps, t);
    CHECK(std::abs(b_entry(kBath, w, w + 0.5 * eps, t) - want) <= 1e-7 * std::abs(want));
    const Complex want_s = s_quadrature_oracle(kBath, w, w + 0.5 * eps, t);
    CHECK(std::abs(s_entry(kBath, w, w + 0.5 * eps, t) - want_s) <= 1e-7 * std::abs(want_s));
}

TEST_CASE("rate tensor assembly") {
    const VSystemSpec sys{0.095, 0.105};
    const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};

    SUBCASE("hermitian, positive semidefinite, correctly scaled") {
        const RateTensor rt = rate_tensor(bath, sys, 63.0);
        CHECK((rt.gamma - rt.gamma.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK((rt.lamb - rt.lamb.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(rt.min_gamma_eigenvalue() >= -1e-12 * rt.gamma.trace().real());
        CHECK(rt.gamma(0, 0).real() ==
              doctest::Approx(bath.g * b_diag(bath, 0.095, 63.0) / 63.0).epsilon(1e-14));
        CHECK(rt.dt == 63.0);
    }

    SUBCASE("positivity across the dt range (Fig-2 parameters)") {
        for (int i = 0; i < 20; ++i) {
            const double dt = std::pow(10.0, 4.0 * i / 19.0);
            const RateTensor rt = rate_tensor(bath, sys, dt);
            CHECK(rt.min_gamma_eigenvalue() >= -1e-12 * rt.gamma.trace().real());
        }
    }

    SUBCASE("degenerate frequencies decouple the dark state") {
        const VSystemSpec dark{0.1, 0.1};
        const RateTensor rt = rate_tensor(bath, dark, 63.0);
        CHECK(std::abs(rt.gamma(0, 0) - rt.gamma(0, 1)) < 1e-12 * std::abs(rt.gamma(0, 0)));
        CHECK(std::abs(rt.gamma(0, 0) - rt.gamma(1, 1)) < 1e-12 * std::abs(rt.gamma(0, 0)));
        // (1, -1)/sqrt(2) is a null vector
        Eigen::Vector2cd minus(1.0, -1.0);
        CHECK((rt.gamma * minus).norm() < 1e-12 * std::abs(rt.gamma(0, 0)));
    }

    SUBCASE("RWA limit of the diagonal and decay of the off-diagonal") {
        const double w1 = sys.omega1;
        const RateTensor far = rate_tensor(bath, sys, 1e4);
        CHECK(far.gamma(0, 0).real() ==
              doctest::Approx(gamma_rwa(bath, w1)).epsilon(0.01));
        CHECK(std::abs(far.gamma(0, 1)) < 0.02 * far.gamma(0, 0).real());
        // Lamb-shift diagonal approaches the one-sided-transform shift
        CHECK(far.lamb(0, 0).real() == doctest::Approx(lamb_rwa(bath, w1)).epsilon(0.01));
    }

    CHECK_THROWS_AS((void)rate_tensor(bath, sys, 0.0), DomainError);
    CHECK_THROWS_AS((void)rate_tensor(bath, sys, -1.0), DomainError);
}

TEST_CASE("rate scan emits one row per dt") {
    const VSystemSpec sys{0.095, 0.105};
    const BathSpec bath{1.0, 1.0, 0.001, std::numeric_limits<double>::infinity()};
    const std::vector<double> dts = {1.0, 10.0, 100.0};
    const auto scan = rate_scan(bath, sys, dts);
    REQUIRE(scan.size() == 3);
    CHECK(scan[1].dt == 10.0);
    CHECK(scan[2].gamma(0, 0).real() ==
          doctest::Approx(bath.g * b_diag(bath, 0.095, 100.0) / 100.0).epsilon(1e-13));
}

TEST_SUITE_END();
