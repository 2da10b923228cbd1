#include "omech/dynamics.hpp"

#include "omech/constants.hpp"
#include "omech/errors.hpp"

#include <algorithm>
#include <limits>

namespace omech {

DriftMatrix drift_matrix(const SystemParams& p, const OperatingPoint& op) {
    DriftMatrix m;
    m.omega_m = p.omega_m;
    Matrix8& a = m.a;

    a(0, 1) = p.omega_m;
    a(1, 0) = -p.omega_m;
    a(1, 1) = -p.kappa_m();

    const std::array<double, 3> kappa{p.kappa_c, p.kappa_w[0], p.kappa_w[1]};
    const std::array<double, 3> delta{op.delta_c, op.delta_w[0], op.delta_w[1]};
    const std::array<double, 3> coupling{op.g_c, op.g_w[0], op.g_w[1]};
    for (int k = 0; k < 3; ++k) {
        const int x = 2 + 2 * k;
        const int y = x + 1;
        a(x, x) = -kappa[k];
        a(x, y) = delta[k];
        a(y, x) = -delta[k];
        a(y, y) = -kappa[k];
        // radiation pressure / electrostatic force on p, and q feeding the Y quadrature
        a(1, x) = coupling[k];
        a(y, 0) = coupling[k];
    }
    return m;
}

DiffusionMatrix diffusion_matrix(const SystemParams& p, const OperatingPoint& op) {
    DiffusionMatrix d;
    d.diag(0) = 0.0;
    d.diag(1) = p.kappa_m() * (2.0 * op.n_mech + 1.0);
    d.diag(2) = p.kappa_c;
    d.diag(3) = p.kappa_c;
    for (int j = 0; j < 2; ++j) {
        const double v = p.kappa_w[j] * (2.0 * op.n_w[j] + 1.0);
        d.diag(4 + 2 * j) = v;
        d.diag(5 + 2 * j) = v;
    }
    return d;
}

StabilityReport stability(const DriftMatrix& a) {
    // Normalize to omega_m so the eigen-solver sees O(1) entries.
    const Matrix8 normalized = a.a / a.omega_m;
    Eigen::EigenSolver<Matrix8> solver(normalized, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverError("eigenvalue iteration for the drift matrix did not converge");
    }

    StabilityReport report;
    double abscissa = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kQuadratures; ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i) * a.omega_m;
        report.eigenvalues[i] = ev;
        abscissa = std::max(abscissa, ev.real());
    }
    if (!std::isfinite(abscissa)) {
        throw EigenSolverError("drift matrix has non-finite eigenvalues");
    }
    report.max_real_eig = abscissa;
    report.stable = abscissa < -kStabilityMargin * a.omega_m;
    return report;
}

}  // namespace omech
