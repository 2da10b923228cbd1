#pragma once

// =============================================================================
// Physical model of the optoelectromechanical system
// =============================================================================
// One mechanical membrane (q, p) couples by radiation pressure to an optical
// Fabry-Perot mode and capacitively to two microwave LC circuits. Everything
// in this header is SI; angular frequencies and damping rates are rad/s, and
// damping rates are amplitude decay rates (a linewidth in FWHM is 2 kappa).
// =============================================================================

#include <array>
#include <string>
#include <vector>

namespace omech {

struct SystemParams {
    double omega_m = 0.0;        ///< mechanical angular frequency [rad/s]
    double q_factor = 0.0;       ///< mechanical quality factor, kappa_m = omega_m / Q
    double mass = 0.0;           ///< effective mechanical mass [kg]
    double lambda_drive = 0.0;   ///< optical drive wavelength [m]
    double cavity_length = 0.0;  ///< optical cavity length [m]
    double kappa_c = 0.0;        ///< optical damping rate [rad/s]
    double power_c = 0.0;        ///< optical drive power [W]
    std::array<double, 2> omega_w{};  ///< microwave resonance frequencies [rad/s]
    std::array<double, 2> kappa_w{};  ///< microwave damping rates [rad/s]
    std::array<double, 2> power_w{};  ///< microwave drive powers [W]
    std::array<double, 2> gap_d{};    ///< equilibrium capacitor gaps [m]
    std::array<double, 2> mu{};       ///< participation ratios C_d / C_sigma, in (0, 1)
    double temperature = 0.0;    ///< bath temperature [K]

    [[nodiscard]] double kappa_m() const noexcept { return omega_m / q_factor; }
    /// Optical carrier, taken equal to the drive frequency 2 pi c / lambda.
    [[nodiscard]] double omega_c() const noexcept;

    bool operator==(const SystemParams&) const = default;
};

/// Effective detunings, rad/s. These are the independent inputs; the bare
/// detunings follow from the static membrane shift.
struct Detunings {
    double delta_c = 0.0;
    std::array<double, 2> delta_w{};
};

struct OperatingPoint {
    double delta_c = 0.0;
    std::array<double, 2> delta_w{};
    double alpha_s = 0.0;               ///< |alpha_s|, optical steady amplitude
    std::array<double, 2> beta_s{};     ///< |beta_js|, microwave steady amplitudes
    double q_s = 0.0;                   ///< static displacement, dimensionless
    double g_c = 0.0;                   ///< effective optomechanical coupling [rad/s]
    std::array<double, 2> g_w{};        ///< effective electromechanical couplings [rad/s]
    double n_mech = 0.0;                ///< mechanical thermal occupation
    std::array<double, 2> n_w{};        ///< microwave thermal occupations
};

struct DriveAmplitudes {
    double e_c = 0.0;
    std::array<double, 2> e_w{};
};

struct BareCouplings {
    double g0_c = 0.0;
    std::array<double, 2> g0_w{};
};

/// Returns `raw` unchanged if every invariant holds, otherwise throws
/// ParameterError naming the offending field. Drive powers may be zero.
SystemParams validate_params(const SystemParams& raw);

/// Soft checks that do not reject a parameter set (frequency hierarchy).
std::vector<std::string> params_warnings(const SystemParams& p);

/// Bose-Einstein occupation 1 / (exp(hbar omega / k_B T) - 1); exactly 0 at T = 0.
double thermal_occupation(double omega, double temperature) noexcept;

DriveAmplitudes drive_amplitudes(const SystemParams& p) noexcept;

BareCouplings bare_couplings(const SystemParams& p) noexcept;

/// Semiclassical fixed point for the given effective detunings. Amplitudes are
/// kept as magnitudes (drive phases chosen so they are real and positive).
OperatingPoint steady_state(const SystemParams& p, const Detunings& detunings) noexcept;

/// Bare detunings Delta_0 = Delta + G_0 q_s, diagnostic only.
Detunings bare_detunings(const OperatingPoint& op, const SystemParams& p) noexcept;

}  // namespace omech
