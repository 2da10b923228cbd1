#include "omech/model.hpp"

#include "omech/constants.hpp"
#include "omech/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace omech {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ParameterError("invalid parameter: " + what);
    }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

double SystemParams::omega_c() const noexcept {
    return constants::two_pi * constants::speed_of_light / lambda_drive;
}

SystemParams validate_params(const SystemParams& raw) {
    require(positive(raw.omega_m), "omega_m must be > 0");
    require(positive(raw.q_factor), "q_factor must be > 0");
    require(positive(raw.mass), "mass must be > 0");
    require(positive(raw.lambda_drive), "lambda_drive must be > 0");
    require(positive(raw.cavity_length), "cavity_length must be > 0");
    require(positive(raw.kappa_c), "kappa_c must be > 0");
    require(non_negative(raw.power_c), "power_c must be >= 0");
    for (int j = 0; j < 2; ++j) {
        const std::string idx = "[" + std::to_string(j) + "]";
        require(positive(raw.omega_w[j]), "omega_w" + idx + " must be > 0");
        require(positive(raw.kappa_w[j]), "kappa_w" + idx + " must be > 0");
        require(non_negative(raw.power_w[j]), "power_w" + idx + " must be >= 0");
        require(positive(raw.gap_d[j]), "gap_d" + idx + " must be > 0");
        require(std::isfinite(raw.mu[j]) && raw.mu[j] > 0.0 && raw.mu[j] < 1.0,
                "mu" + idx + " must lie in (0, 1)");
    }
    require(non_negative(raw.temperature), "temperature must be >= 0");
    return raw;
}

std::vector<std::string> params_warnings(const SystemParams& p) {
    std::vector<std::string> out;
    const double w_min = std::min(p.omega_w[0], p.omega_w[1]);
    if (p.omega_m > 0.01 * w_min) {
        std::ostringstream msg;
        msg << "omega_m (" << p.omega_m << " rad/s) is not much smaller than the lowest microwave"
            << " frequency (" << w_min << " rad/s); the rotating-wave treatment assumes"
            << " omega_m << omega_w";
        out.push_back(msg.str());
    }
    if (p.omega_c() < 100.0 * std::max(p.omega_w[0], p.omega_w[1])) {
        out.emplace_back("optical carrier is not well separated from the microwave frequencies");
    }
    return out;
}

double thermal_occupation(double omega, double temperature) noexcept {
    if (temperature <= 0.0) {
        return 0.0;
    }
    const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
    // expm1 overflows to +inf for cold high-frequency modes, giving exactly 0.
    return 1.0 / std::expm1(x);
}

DriveAmplitudes drive_amplitudes(const SystemParams& p) noexcept {
    DriveAmplitudes e;
    e.e_c = std::sqrt(2.0 * p.power_c * p.kappa_c / (constants::hbar * p.omega_c()));
    for (int j = 0; j < 2; ++j) {
        e.e_w[j] = std::sqrt(2.0 * p.power_w[j] * p.kappa_w[j] / (constants::hbar * p.omega_w[j]));
    }
    return e;
}

BareCouplings bare_couplings(const SystemParams& p) noexcept {
    // zero-point displacement sqrt(hbar / m omega_m)
    const double x_zpf = std::sqrt(constants::hbar / (p.mass * p.omega_m));
    BareCouplings g;
    g.g0_c = p.omega_c() / p.cavity_length * x_zpf;
    for (int j = 0; j < 2; ++j) {
        g.g0_w[j] = p.mu[j] * p.omega_w[j] / (2.0 * p.gap_d[j]) * x_zpf;
    }
    return g;
}

OperatingPoint steady_state(const SystemParams& p, const Detunings& detunings) noexcept {
    const DriveAmplitudes e = drive_amplitudes(p);
    const BareCouplings g0 = bare_couplings(p);

    OperatingPoint op;
    op.delta_c = detunings.delta_c;
    op.delta_w = detunings.delta_w;
    op.alpha_s = e.e_c / std::hypot(p.kappa_c, detunings.delta_c);
    op.g_c = std::numbers::sqrt2 * g0.g0_c * op.alpha_s;
    double shift = g0.g0_c * op.alpha_s * op.alpha_s;
    for (int j = 0; j < 2; ++j) {
        op.beta_s[j] = e.e_w[j] / std::hypot(p.kappa_w[j], detunings.delta_w[j]);
        op.g_w[j] = std::numbers::sqrt2 * g0.g0_w[j] * op.beta_s[j];
        shift += g0.g0_w[j] * op.beta_s[j] * op.beta_s[j];
        op.n_w[j] = thermal_occupation(p.omega_w[j], p.temperature);
    }
    op.q_s = shift / p.omega_m;
    op.n_mech = thermal_occupation(p.omega_m, p.temperature);
    return op;
}

Detunings bare_detunings(const OperatingPoint& op, const SystemParams& p) noexcept {
    const BareCouplings g0 = bare_couplings(p);
    Detunings bare;
    bare.delta_c = op.delta_c + g0.g0_c * op.q_s;
    for (int j = 0; j < 2; ++j) {
        bare.delta_w[j] = op.delta_w[j] + g0.g0_w[j] * op.q_s;
    }
    return bare;
}

}  // namespace omech
