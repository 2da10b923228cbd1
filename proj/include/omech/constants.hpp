#pragma once

#include <numbers>

namespace omech {

/// CODATA 2018 exact / recommended values, SI.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double speed_of_light = 2.99792458e8;  // m / s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

/// Quadrature convention X = (a + a^dag)/sqrt(2): vacuum variance is 1/2 and
/// [X, Y] = i. Physicality and separability thresholds derive from this.
inline constexpr double kVacuumVariance = 0.5;

/// Stability margin on the spectral abscissa, in units of omega_m.
inline constexpr double kStabilityMargin = 1e-9;

/// Floors separating round-off from genuine unphysicality in the
/// negativity formula (absolute).
inline constexpr double kRadicandFloor = 1e-12;

/// Tolerance on min eig(V + i/2 Omega) before a state is declared unphysical.
inline constexpr double kUncertaintyTolerance = 1e-9;

/// Lyapunov residual bound, relative to max(2 ||A||_F ||V||_F + ||D||_F, 1) in
/// omega_m units.
inline constexpr double kLyapunovResidualTolerance = 1e-10;

}  // namespace omech
