#pragma once

// =============================================================================
// Pipeline evaluation and declarative parameter sweeps
// =============================================================================

#include "omech/dynamics.hpp"
#include "omech/gaussian.hpp"
#include "omech/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omech {

// -----------------------------------------------------------------------------
// Single point
// -----------------------------------------------------------------------------

/// Result of model -> dynamics -> gaussian at one operating point. The
/// covariance is present only for stable points.
struct PointEvaluation {
    OperatingPoint op;
    StabilityReport stability;
    std::optional<CovarianceMatrix> covariance;
    double lyapunov_residual = 0.0;
    double min_uncertainty_eig = 0.0;
};

/// Throws NumericalError subclasses on solver failure or if the solved state
/// violates the uncertainty relation; an unstable point is not an error.
PointEvaluation evaluate_point(const SystemParams& p, const Detunings& detunings,
                               LyapunovMethod method = LyapunovMethod::Kronecker);

/// E_N of one bipartition of a solved point.
double entanglement(const PointEvaluation& eval, const Bipartition& pair);

// -----------------------------------------------------------------------------
// Sweep specification
// -----------------------------------------------------------------------------

/// Detunings in units of omega_m. With the tie flag set, Delta_w2 = -Delta_w1
/// and delta_w2 is ignored.
struct OperatingSettings {
    double delta_c = 1.0;
    double delta_w1 = 0.0;
    double delta_w2 = 0.0;
    bool tie_microwave_detunings = true;

    bool operator==(const OperatingSettings&) const = default;

    [[nodiscard]] Detunings to_detunings(double omega_m) const;
};

/// Swept parameter. Detunings are in omega_m units; everything else is SI
/// (frequencies in Hz, i.e. omega / 2 pi). "Both" targets set circuits 1 and 2
/// to the same value.
enum class AxisTarget {
    DeltaC,
    DeltaW,      ///< Delta_w1 (Delta_w2 follows through the tie flag)
    DeltaW1,
    DeltaW2,
    Temperature,
    GapBoth,
    Gap1,
    Gap2,
    PowerC,
    PowerWBoth,
    FreqWBoth,
};

std::string_view axis_name(AxisTarget t) noexcept;
/// Throws ConfigError for unknown names.
AxisTarget parse_axis(std::string_view name);
[[nodiscard]] bool axis_is_detuning(AxisTarget t) noexcept;

struct SweepAxis {
    AxisTarget target = AxisTarget::DeltaW;
    double start = -0.8;
    double stop = 0.8;
    int count = 401;

    bool operator==(const SweepAxis&) const = default;

    /// Linear grid; mirrored indices of a symmetric range are exact negatives.
    [[nodiscard]] double value(int index) const noexcept;
};

inline constexpr int kDefaultGridCount = 401;

struct SweepSpec {
    std::string label;
    SystemParams base;
    OperatingSettings fixed;
    SweepAxis axis;
    std::vector<Bipartition> bipartitions{{Subsystem::Micro1, Subsystem::Micro2}};
};

/// Throws ConfigError if the grid or bipartition list is malformed, and
/// ParameterError if the base parameters are invalid.
void validate_spec(const SweepSpec& spec);

struct GridPoint {
    std::size_t index = 0;
    double axis_value = 0.0;  ///< reported units (omega_m for detunings, SI otherwise)
    SystemParams params;
    Detunings detunings;
};

/// Expands the grid into concrete parameter sets, in axis order.
std::vector<GridPoint> expand_grid(const SweepSpec& spec);

struct SweepRow {
    std::size_t index = 0;
    double axis_value = 0.0;
    bool stable = false;
    double max_real_eig_over_omega_m = 0.0;
    std::vector<std::optional<double>> entanglement;  ///< one per requested bipartition
    double g_c_over_omega_m = 0.0;
    double g_w1_over_omega_m = 0.0;
    double g_w2_over_omega_m = 0.0;
    std::string error;  ///< non-empty if this point failed numerically
};

/// Evaluates every grid point. Points are independent; with threads > 1 they
/// are distributed over workers, and rows are returned in index order either
/// way. A failing point is recorded in its row and does not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

// -----------------------------------------------------------------------------
// Figure presets
// -----------------------------------------------------------------------------

struct PresetInfo {
    std::string_view name;
    std::string_view description;
};

const std::vector<PresetInfo>& preset_catalog();

/// Reference parameter set: omega_m/2pi = 10 MHz, Q = 5e4, m = 10 ng,
/// lambda = 1550 nm, L = 1 mm, kappa_c = 0.08 omega_m, P = 30 mW on every
/// drive, kappa_w = 0.02 omega_m, d = 100 nm, mu = 0.008, T = 15 mK, with
/// microwave circuits at 9 GHz and 3 GHz.
SystemParams reference_params();

/// One spec per plotted curve. Throws ConfigError for an unknown id.
std::vector<SweepSpec> preset(std::string_view id);

}  // namespace omech
