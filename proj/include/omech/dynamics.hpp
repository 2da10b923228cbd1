#pragma once

// =============================================================================
// Linearized fluctuation dynamics: dv/dt = A v + n
// =============================================================================
// Quadrature ordering is fixed throughout the library:
//   0 dq   1 dp   2 dX_c  3 dY_c  4 dX_w1  5 dY_w1  6 dX_w2  7 dY_w2
// =============================================================================

#include "omech/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace omech {

inline constexpr int kModes = 4;
inline constexpr int kQuadratures = 2 * kModes;

using Matrix8 = Eigen::Matrix<double, kQuadratures, kQuadratures>;
using Vector8 = Eigen::Matrix<double, kQuadratures, 1>;

/// Drift matrix in rad/s, tagged with the mechanical frequency used as the
/// natural rate unit for normalization and the stability margin.
struct DriftMatrix {
    Matrix8 a = Matrix8::Zero();
    double omega_m = 1.0;

    /// Uniform time rescaling t -> t / s: every rate, including omega_m, times s.
    [[nodiscard]] DriftMatrix scaled(double s) const { return {s * a, s * omega_m}; }
};

/// Diagonal diffusion matrix in rad/s.
struct DiffusionMatrix {
    Vector8 diag = Vector8::Zero();

    [[nodiscard]] Matrix8 dense() const { return diag.asDiagonal(); }
    [[nodiscard]] DiffusionMatrix scaled(double s) const { return {s * diag}; }
};

struct StabilityReport {
    bool stable = false;
    double max_real_eig = 0.0;  ///< spectral abscissa [rad/s]
    std::array<std::complex<double>, kQuadratures> eigenvalues{};
};

DriftMatrix drift_matrix(const SystemParams& p, const OperatingPoint& op);

/// diag = [0, k_m(2n_m+1), k_c, k_c, k_w1(2N_1+1) x2, k_w2(2N_2+1) x2];
/// the optical bath is taken at zero occupation.
DiffusionMatrix diffusion_matrix(const SystemParams& p, const OperatingPoint& op);

/// Hurwitz test by spectral abscissa: stable iff every eigenvalue has real
/// part below -kStabilityMargin * omega_m. Throws EigenSolverError if the
/// eigenvalue iteration fails.
StabilityReport stability(const DriftMatrix& a);

}  // namespace omech
