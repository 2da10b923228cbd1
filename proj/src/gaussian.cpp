#include "omech/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace omech {

namespace {

constexpr int kUnknowns = kQuadratures * kQuadratures;
using KronMatrix = Eigen::Matrix<double, kUnknowns, kUnknowns>;
using KronVector = Eigen::Matrix<double, kUnknowns, 1>;
using ComplexMatrix8 = Eigen::Matrix<std::complex<double>, kQuadratures, kQuadratures>;

void require_stable(const DriftMatrix& a) {
    const StabilityReport report = stability(a);
    if (!report.stable) {
        throw UnstableSystemError("drift matrix is not Hurwitz (max Re eig = " +
                                  std::to_string(report.max_real_eig / a.omega_m) +
                                  " omega_m); no stationary state exists");
    }
}

// vec is column-major: V(i, j) <-> i + 8 j.
KronMatrix kronecker_operator(const Matrix8& a) {
    KronMatrix k = KronMatrix::Zero();
    for (int j = 0; j < kQuadratures; ++j) {
        for (int i = 0; i < kQuadratures; ++i) {
            const int row = i + kQuadratures * j;
            for (int m = 0; m < kQuadratures; ++m) {
                k(row, m + kQuadratures * j) += a(i, m);  // (I (x) A) vec V
                k(row, i + kQuadratures * m) += a(j, m);  // (A (x) I) vec V
            }
        }
    }
    return k;
}

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

constexpr int kMaxRefinementSteps = 8;

// The operator is ill-conditioned when the mechanical damping is small next to
// the couplings (rcond ~ 1e-11), so the LU solution alone is accurate to only a
// few digits. Refinement with the residual accumulated in quad precision
// recovers the correctly rounded solution.
Matrix8 solve_kronecker(const Matrix8& a, const Matrix8& d) {
    const KronMatrix k = kronecker_operator(a);
    Eigen::PartialPivLU<KronMatrix> lu(k);
    if (!(lu.rcond() > kUnknowns * std::numeric_limits<double>::epsilon())) {
        throw SingularSolveError("Lyapunov operator is numerically singular (rcond = " +
                                 std::to_string(lu.rcond()) + ")");
    }
    const KronVector rhs = -Eigen::Map<const KronVector>(d.data());

    std::array<std::vector<std::pair<int, double>>, kUnknowns> rows;
    for (int i = 0; i < kUnknowns; ++i) {
        for (int j = 0; j < kUnknowns; ++j) {
            if (k(i, j) != 0.0) rows[static_cast<std::size_t>(i)].emplace_back(j, k(i, j));
        }
    }

    const KronVector x0 = lu.solve(rhs);
    std::array<Wide, kUnknowns> x{};
    for (int i = 0; i < kUnknowns; ++i) x[static_cast<std::size_t>(i)] = x0(i);

    KronVector rounded = x0;
    for (int step = 0; step < kMaxRefinementSteps; ++step) {
        KronVector r;
        for (int i = 0; i < kUnknowns; ++i) {
            Wide acc = rhs(i);
            for (const auto& [j, kij] : rows[static_cast<std::size_t>(i)]) {
                acc -= static_cast<Wide>(kij) * x[static_cast<std::size_t>(j)];
            }
            r(i) = static_cast<double>(acc);
        }
        const KronVector correction = lu.solve(r);
        KronVector next;
        for (int i = 0; i < kUnknowns; ++i) {
            x[static_cast<std::size_t>(i)] += correction(i);
            next(i) = static_cast<double>(x[static_cast<std::size_t>(i)]);
        }
        const bool settled = next == rounded;
        rounded = next;
        if (settled) break;
    }

    Matrix8 v;
    Eigen::Map<KronVector>(v.data()) = rounded;
    return v;
}

// A = U T U^*, so T Y + Y T^* = -U^* D U with Y = U^* V U.
Matrix8 solve_schur(const Matrix8& a, const Matrix8& d) {
    Eigen::ComplexSchur<Matrix8> schur(a);
    if (schur.info() != Eigen::Success) {
        throw EigenSolverError("complex Schur decomposition did not converge");
    }
    const ComplexMatrix8& t = schur.matrixT();
    const ComplexMatrix8& u = schur.matrixU();
    const ComplexMatrix8 c = u.adjoint() * d.cast<std::complex<double>>() * u;

    ComplexMatrix8 y = ComplexMatrix8::Zero();
    for (int i = kQuadratures - 1; i >= 0; --i) {
        for (int j = kQuadratures - 1; j >= 0; --j) {
            std::complex<double> acc = -c(i, j);
            for (int k = i + 1; k < kQuadratures; ++k) {
                acc -= t(i, k) * y(k, j);
            }
            for (int k = j + 1; k < kQuadratures; ++k) {
                acc -= y(i, k) * std::conj(t(j, k));
            }
            const std::complex<double> denom = t(i, i) + std::conj(t(j, j));
            if (std::abs(denom) < std::numeric_limits<double>::epsilon()) {
                throw SingularSolveError("Schur Lyapunov solve hit a vanishing eigenvalue sum");
            }
            y(i, j) = acc / denom;
        }
    }
    return (u * y * u.adjoint()).real();
}

Matrix8 rk4_step(const Matrix8& x, double h, const auto& rhs) {
    const Matrix8 k1 = rhs(x);
    const Matrix8 k2 = rhs(x + 0.5 * h * k1);
    const Matrix8 k3 = rhs(x + 0.5 * h * k2);
    const Matrix8 k4 = rhs(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::string_view subsystem_name(Subsystem s) noexcept {
    switch (s) {
    case Subsystem::Mecha: return "Mecha";
    case Subsystem::Opto: return "Opto";
    case Subsystem::Micro1: return "Micro1";
    case Subsystem::Micro2: return "Micro2";
    }
    return "?";
}

Subsystem parse_subsystem(std::string_view name) {
    for (Subsystem s : kAllSubsystems) {
        if (subsystem_name(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown subsystem '" + std::string(name) +
                                "' (expected Mecha, Opto, Micro1 or Micro2)");
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& a, const DiffusionMatrix& d, LyapunovMethod method) {
    require_stable(a);

    const Matrix8 an = a.a / a.omega_m;
    const Matrix8 dn = d.dense() / a.omega_m;
    Matrix8 v = method == LyapunovMethod::Schur ? solve_schur(an, dn) : solve_kronecker(an, dn);
    v = 0.5 * (v + v.transpose()).eval();

    if (!v.allFinite()) {
        throw SingularSolveError("Lyapunov solve produced non-finite entries");
    }
    CovarianceMatrix out{v};
    const double residual = lyapunov_residual(a, d, out);
    const double scale = 2.0 * an.norm() * v.norm() + dn.norm();
    if (!(residual <= kLyapunovResidualTolerance * std::max(scale, 1.0))) {
        std::array<char, 160> msg{};
        std::snprintf(msg.data(), msg.size(),
                      "Lyapunov residual %.3e exceeds %.1e * (2 ||A|| ||V|| + ||D||) = %.3e; "
                      "drift matrix is ill-conditioned",
                      residual, kLyapunovResidualTolerance, kLyapunovResidualTolerance * scale);
        throw SingularSolveError(msg.data());
    }
    return out;
}

double lyapunov_residual(const DriftMatrix& a, const DiffusionMatrix& d, const CovarianceMatrix& v) {
    const Matrix8 an = a.a / a.omega_m;
    const Matrix8 dn = d.dense() / a.omega_m;
    return (an * v.v + v.v * an.transpose() + dn).norm();
}

CovarianceMatrix integrate_covariance_oracle(const DriftMatrix& a, const DiffusionMatrix& d,
                                             double horizon, double step) {
    if (!(step > 0.0) || !(horizon >= step)) {
        throw std::invalid_argument("integrate_covariance_oracle: need 0 < step <= horizon");
    }
    require_stable(a);

    // dimensionless time tau = omega_m t
    const Matrix8 an = a.a / a.omega_m;
    const Matrix8 dn = d.dense() / a.omega_m;
    const double tau_step = step * a.omega_m;
    const double tau_horizon = horizon * a.omega_m;

    // Substeps with |h| ||A|| <= 1e-3 keep the RK4 truncation below round-off.
    const double rate = std::max(an.lpNorm<Eigen::Infinity>(), 1.0);
    const long substeps = std::max(1L, static_cast<long>(std::ceil(tau_step * rate / 1e-3)));
    const double h = tau_step / static_cast<double>(substeps);

    Matrix8 propagator = Matrix8::Identity();
    Matrix8 v = Matrix8::Zero();
    const auto flow = [&](const Matrix8& m) -> Matrix8 { return an * m; };
    const auto lyap = [&](const Matrix8& x) -> Matrix8 { return an * x + x * an.transpose() + dn; };
    for (long s = 0; s < substeps; ++s) {
        propagator = rk4_step(propagator, h, flow);
        v = rk4_step(v, h, lyap);
    }

    // V(2t) = V(t) + M(t) V(t) M(t)^T,  M(2t) = M(t)^2
    double tau = tau_step;
    while (true) {
        if (propagator.norm() <= 1e-8) {
            break;
        }
        if (tau >= tau_horizon) {
            throw ConvergenceError("covariance integral has not converged by the horizon (||M|| = " +
                                   std::to_string(propagator.norm()) + ")");
        }
        v += propagator * v * propagator.transpose();
        propagator = (propagator * propagator).eval();
        tau *= 2.0;
    }
    return {0.5 * (v + v.transpose())};
}

double min_uncertainty_eigenvalue(const CovarianceMatrix& v) {
    ComplexMatrix8 h = v.v.cast<std::complex<double>>();
    const std::complex<double> half_i(0.0, 0.5);
    for (int k = 0; k < kModes; ++k) {
        h(2 * k, 2 * k + 1) += half_i;
        h(2 * k + 1, 2 * k) -= half_i;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix8> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigenSolverError("eigenvalues of V + i Omega / 2 did not converge");
    }
    return solver.eigenvalues().minCoeff();
}

BipartiteCM reduce_bipartite(const CovarianceMatrix& v, Subsystem s1, Subsystem s2) {
    if (s1 == s2) {
        throw std::invalid_argument("reduce_bipartite: the two parties must differ");
    }
    const int i = quadrature_offset(s1);
    const int j = quadrature_offset(s2);
    BipartiteCM b;
    b.v1 = v.v.block<2, 2>(i, i);
    b.v2 = v.v.block<2, 2>(j, j);
    b.v3 = v.v.block<2, 2>(i, j);
    return b;
}

}  // namespace omech
