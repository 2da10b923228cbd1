#include "omech/constants.hpp"
#include "omech/errors.hpp"
#include "omech/sweep.hpp"

#include <cmath>
#include <string>

namespace omech {

namespace {

constexpr double kGHz = 1e9;

double hz_to_rad(double f) { return constants::two_pi * f; }

std::string ghz_label(double f) {
    return std::to_string(static_cast<long long>(std::lround(f / kGHz))) + "GHz";
}

SweepSpec detuning_curve(std::string label, SystemParams base, double start, double stop) {
    SweepSpec spec;
    spec.label = std::move(label);
    spec.base = base;
    spec.fixed = OperatingSettings{1.0, 0.0, 0.0, true};
    spec.axis = SweepAxis{AxisTarget::DeltaW, start, stop, kDefaultGridCount};
    return spec;
}

SystemParams with_frequencies(double f1, double f2) {
    SystemParams p = reference_params();
    p.omega_w = {hz_to_rad(f1), hz_to_rad(f2)};
    return p;
}

std::vector<SweepSpec> unequal_pairs(double start, double stop) {
    std::vector<SweepSpec> out;
    for (auto [f1, f2] : {std::pair{9 * kGHz, 3 * kGHz}, {30 * kGHz, 3 * kGHz}, {30 * kGHz, 9 * kGHz}}) {
        out.push_back(detuning_curve(ghz_label(f1) + "-" + ghz_label(f2), with_frequencies(f1, f2), start, stop));
    }
    return out;
}

std::vector<SweepSpec> equal_frequencies() {
    std::vector<SweepSpec> out;
    for (double f : {3 * kGHz, 9 * kGHz, 30 * kGHz, 300 * kGHz}) {
        out.push_back(detuning_curve(ghz_label(f), with_frequencies(f, f), -0.8, 0.8));
    }
    return out;
}

std::vector<SweepSpec> gap_curves() {
    std::vector<SweepSpec> out;
    for (double d : {20e-9, 100e-9, 500e-9}) {
        SystemParams p = with_frequencies(9 * kGHz, 9 * kGHz);
        p.gap_d = {d, d};
        out.push_back(detuning_curve("d" + std::to_string(std::lround(d * 1e9)) + "nm", p, -0.8, 0.8));
    }
    return out;
}

std::vector<SweepSpec> temperature_curves() {
    std::vector<SweepSpec> out;
    for (auto [f, dw] : {std::pair{3 * kGHz, -0.05}, {30 * kGHz, -0.12}, {300 * kGHz, -0.13}}) {
        SweepSpec spec;
        spec.label = ghz_label(f);
        spec.base = with_frequencies(f, f);
        spec.fixed = OperatingSettings{1.0, dw, 0.0, true};
        spec.axis = SweepAxis{AxisTarget::Temperature, 0.0, 20.0, kDefaultGridCount};
        out.push_back(spec);
    }
    return out;
}

std::vector<SweepSpec> light_microwave() {
    SystemParams p = with_frequencies(9 * kGHz, 9 * kGHz);
    p.kappa_c = 0.01 * p.omega_m;
    SweepSpec spec = detuning_curve("9GHz", p, -2.0, 2.0);
    spec.bipartitions = {
        {Subsystem::Opto, Subsystem::Micro1},
        {Subsystem::Opto, Subsystem::Micro2},
        {Subsystem::Mecha, Subsystem::Micro1},
        {Subsystem::Mecha, Subsystem::Micro2},
        {Subsystem::Micro1, Subsystem::Micro2},
    };
    return {spec};
}

}  // namespace

SystemParams reference_params() {
    SystemParams p;
    p.omega_m = hz_to_rad(10e6);
    p.q_factor = 5e4;
    p.mass = 10e-12;  // 10 ng
    p.lambda_drive = 1550e-9;
    p.cavity_length = 1e-3;
    p.kappa_c = 0.08 * p.omega_m;
    p.power_c = 30e-3;
    p.omega_w = {hz_to_rad(9 * kGHz), hz_to_rad(3 * kGHz)};
    p.kappa_w = {0.02 * p.omega_m, 0.02 * p.omega_m};
    p.power_w = {30e-3, 30e-3};
    p.gap_d = {100e-9, 100e-9};
    p.mu = {0.008, 0.008};
    p.temperature = 15e-3;
    return p;
}

const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog{
        {"fig2", "unequal microwave pairs 9/3, 30/3, 30/9 GHz; Delta_w in [-0.8, 0.8] omega_m"},
        {"fig2a", "unequal microwave pairs; Delta_w in [-0.8, 0] omega_m"},
        {"fig2b", "unequal microwave pairs; Delta_w in [0.1, 0.8] omega_m"},
        {"fig3", "equal microwave frequencies 3, 9, 30, 300 GHz; Delta_w in [-0.8, 0.8] omega_m"},
        {"fig4", "9 GHz pair with capacitor gaps 20, 100, 500 nm; Delta_w in [-0.8, 0.8] omega_m"},
        {"fig5", "temperature 0-20 K for 3/30/300 GHz pairs at Delta_w = -0.05/-0.12/-0.13 omega_m"},
        {"fig6", "five bipartitions, 9 GHz pair, kappa_c = 0.01 omega_m; Delta_w in [-2, 2] omega_m"},
    };
    return catalog;
}

std::vector<SweepSpec> preset(std::string_view id) {
    if (id == "fig2") return unequal_pairs(-0.8, 0.8);
    if (id == "fig2a") return unequal_pairs(-0.8, 0.0);
    if (id == "fig2b") return unequal_pairs(0.1, 0.8);
    if (id == "fig3") return equal_frequencies();
    if (id == "fig4") return gap_curves();
    if (id == "fig5") return temperature_curves();
    if (id == "fig6") return light_microwave();
    throw ConfigError("unknown preset '" + std::string(id) + "'");
}

}  // namespace omech
