// model.cpp

#include "cgsme/model.hpp"

#include <Eigen/Eigenvalues>

namespace cgsme {

DensityMatrix3 amplitudes_to_density(const AmplitudeState& c) {
    DensityMatrix3 rho;
    const double p1 = std::norm(c.c1);
    const double p2 = std::norm(c.c2);
    rho(0, 0) = 1.0 - p1 - p2;
    rho(0, 1) = c.c0 * std::conj(c.c1);
    rho(0, 2) = c.c0 * std::conj(c.c2);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 1) = p1;
    rho(1, 2) = c.c1 * std::conj(c.c2);
    rho(2, 0) = std::conj(rho(0, 2));
    rho(2, 1) = std::conj(rho(1, 2));
    rho(2, 2) = p2;
    return rho;
}

double trace_deviation(const DensityMatrix3& rho) {
    return std::abs(rho.trace() - Complex(1.0, 0.0));
}

double min_eigenvalue(const DensityMatrix3& rho) {
    const DensityMatrix3 h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DensityMatrix3> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double hermiticity_deviation(const DensityMatrix3& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace cgsme
