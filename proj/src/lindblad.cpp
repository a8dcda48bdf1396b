// lindblad.cpp

#include "cgsme/lindblad.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cgsme {

namespace {

using Complex = std::complex<double>;
using Matrix3 = Eigen::Matrix3cd;

constexpr Complex kI(0.0, 1.0);

Matrix9 kron3(const Matrix3& a, const Matrix3& b) {
    Matrix9 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return out;
}

Matrix3 lowering(int level) {
    Matrix3 a = Matrix3::Zero();
    a(0, level) = 1.0;
    return a;
}

// -i[H,·] + Σ_jk gamma_jk (a_j · a_k† - ½{a_k† a_j, ·}) in vectorized form.
Matrix9 assemble(const Matrix3& h_ls, const Eigen::Matrix2cd& gamma) {
    const Matrix3 id = Matrix3::Identity();
    Matrix9 L = -kI * (kron3(id, h_ls) - kron3(h_ls.transpose(), id));
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            const Matrix3 aj = lowering(j + 1);
            const Matrix3 ak = lowering(k + 1);
            const Matrix3 akd_aj = ak.adjoint() * aj;
            L += gamma(j, k) * (kron3(ak.conjugate(), aj) -
                                0.5 * kron3(id, akd_aj) -
                                0.5 * kron3(akd_aj.transpose(), id));
        }
    }
    return L;
}

struct EigenPropagator {
    Eigen::Matrix<Complex, 9, 9> vectors;
    Eigen::PartialPivLU<Eigen::Matrix<Complex, 9, 9>> lu;
    Eigen::Matrix<Complex, 9, 1> values;
    bool usable = false;
};

EigenPropagator decompose(const Matrix9& L) {
    EigenPropagator p;
    Eigen::ComplexEigenSolver<Matrix9> es(L, true);
    if (es.info() != Eigen::Success) return p;
    p.vectors = es.eigenvectors();
    p.values = es.eigenvalues();
    p.lu = Eigen::PartialPivLU<Matrix9>(p.vectors);
    // crude 1-norm condition estimate; fall back to Padé when the
    // eigenvector basis is too skewed
    const double norm_v = p.vectors.cwiseAbs().colwise().sum().maxCoeff();
    const Matrix9 inv = p.lu.solve(Matrix9::Identity());
    const double norm_vi = inv.cwiseAbs().colwise().sum().maxCoeff();
    p.usable = std::isfinite(norm_vi) && norm_v * norm_vi < 1e8;
    return p;
}

} // namespace

Vector9 vec(const DensityMatrix3& rho) {
    return Eigen::Map<const Vector9>(rho.data());
}

DensityMatrix3 unvec(const Vector9& v) {
    return Eigen::Map<const DensityMatrix3>(v.data());
}

Matrix9 Superoperator::full_matrix() const {
    Matrix9 full = matrix;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            full(i + 3 * j, i + 3 * j) += Complex(0.0, -(energies[i] - energies[j]));
    return full;
}

Superoperator build_cg_generator(const RateTensor& rates) {
    // H'_LS = Σ_jk S_jk a_k† a_j = Σ_jk S_jk |k><j| on the excited block
    Matrix3 h = Matrix3::Zero();
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) h(k + 1, j + 1) = rates.lamb(j, k);
    Superoperator L;
    L.matrix = assemble(h, rates.gamma);
    L.energies = {0.0, rates.frequencies[0], rates.frequencies[1]};
    L.picture = Picture::interaction;
    return L;
}

Superoperator build_cg_generator(const VSystemSpec& sys, const BathSpec& bath, double dt,
                                 RateConvention convention) {
    return build_cg_generator(rate_tensor(bath, sys, dt, convention));
}

Superoperator build_rwa_generator(const VSystemSpec& sys, const BathSpec& bath) {
    sys.validate();
    bath.validate();
    Eigen::Matrix2cd gamma = Eigen::Matrix2cd::Zero();
    gamma(0, 0) = gamma_rwa(bath, sys.omega1);
    gamma(1, 1) = gamma_rwa(bath, sys.omega2);
    Matrix3 h = Matrix3::Zero();
    h(1, 1) = lamb_rwa(bath, sys.omega1);
    h(2, 2) = lamb_rwa(bath, sys.omega2);
    Superoperator L;
    L.matrix = assemble(h, gamma);
    L.energies = {0.0, sys.omega1, sys.omega2};
    L.picture = Picture::interaction;
    return L;
}

Matrix9 matrix_exponential(const Matrix9& A) {
    if (!A.allFinite()) throw NumericalError("matrix_exponential: non-finite input");
    // Higham scaling-and-squaring with the [13/13] Padé approximant
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;
    const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    const Matrix9 As = A / std::pow(2.0, squarings);

    const Matrix9 A2 = As * As;
    const Matrix9 A4 = A2 * A2;
    const Matrix9 A6 = A4 * A2;
    const Matrix9 id = Matrix9::Identity();
    const Matrix9 U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
                            b[5] * A4 + b[3] * A2 + b[1] * id);
    const Matrix9 V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 +
                      b[2] * A2 + b[0] * id;
    Matrix9 F = (V - U).partialPivLu().solve(V + U);
    if (!F.allFinite()) throw NumericalError("matrix_exponential: Padé solve failed");
    for (int i = 0; i < squarings; ++i) F = F * F;
    return F;
}

Trajectory propagate(const Superoperator& L, const DensityMatrix3& rho0,
                     const std::vector<double>& times) {
    if (times.empty()) throw DomainError("propagate: empty time grid");
    if (times.front() < 0.0) throw DomainError("propagate: times must start at t >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw DomainError("propagate: times must be strictly increasing");

    Trajectory traj;
    traj.picture = L.picture;
    traj.times = times;
    traj.states.reserve(times.size());

    // undo the H_S rotation so the emitted states are interaction picture
    auto to_frame = [&](const Vector9& v, double t) {
        DensityMatrix3 rho = unvec(v);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                rho(j, k) *= std::exp(Complex(0.0, (L.energies[j] - L.energies[k]) * t));
        return rho;
    };

    const Matrix9 full = L.full_matrix();
    const Vector9 v0 = vec(rho0);
    const EigenPropagator eig = decompose(full);
    if (eig.usable) {
        const Vector9 w = eig.lu.solve(v0);
        for (double t : times) {
            Vector9 scaled;
            for (int k = 0; k < 9; ++k) scaled(k) = std::exp(eig.values(k) * t) * w(k);
            traj.states.push_back(to_frame(eig.vectors * scaled, t));
        }
        return traj;
    }

    // fallback: step with a cached exponential per distinct grid spacing
    Vector9 v = v0;
    double prev = 0.0;
    std::vector<std::pair<double, Matrix9>> cache;
    auto step_matrix = [&](double dt) -> const Matrix9& {
        for (const auto& e : cache)
            if (e.first == dt) return e.second;
        cache.emplace_back(dt, matrix_exponential(full * dt));
        return cache.back().second;
    };
    for (double t : times) {
        const double dt = t - prev;
        if (dt > 0.0) v = step_matrix(dt) * v;
        prev = t;
        traj.states.push_back(to_frame(v, t));
    }
    return traj;
}

Trajectory to_schroedinger(const Trajectory& traj, const VSystemSpec& sys) {
    if (traj.picture != Picture::interaction)
        throw PictureError("to_schroedinger: trajectory already in the Schroedinger picture");
    const double e[3] = {0.0, sys.omega1, sys.omega2};
    Trajectory out;
    out.picture = Picture::schroedinger;
    out.times = traj.times;
    out.states.reserve(traj.states.size());
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        const double t = traj.times[n];
        DensityMatrix3 rho = traj.states[n];
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                rho(j, k) *= std::exp(Complex(0.0, -(e[j] - e[k]) * t));
        out.states.push_back(rho);
    }
    return out;
}

double trace_row_residual(const Superoperator& L) {
    Vector9 tr = Vector9::Zero();
    tr(0) = tr(4) = tr(8) = 1.0; // vec(I)
    return (tr.adjoint() * L.full_matrix()).cwiseAbs().maxCoeff();
}

std::vector<Complex> superop_spectrum(const Superoperator& L) {
    Eigen::ComplexEigenSolver<Matrix9> es(L.full_matrix(), false);
    if (es.info() != Eigen::Success)
        throw NumericalError("superop_spectrum: eigenvalue iteration failed");
    std::vector<Complex> out(9);
    for (int i = 0; i < 9; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

} // namespace cgsme
