#include "omech/sweep.hpp"

#include "omech/constants.hpp"
#include "omech/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace omech {

PointEvaluation evaluate_point(const SystemParams& p, const Detunings& detunings, LyapunovMethod method) {
    PointEvaluation eval;
    eval.op = steady_state(p, detunings);
    const DriftMatrix a = drift_matrix(p, eval.op);
    eval.stability = stability(a);
    if (!eval.stability.stable) {
        return eval;
    }
    const DiffusionMatrix d = diffusion_matrix(p, eval.op);
    CovarianceMatrix v = solve_lyapunov(a, d, method);
    eval.lyapunov_residual = lyapunov_residual(a, d, v);
    eval.min_uncertainty_eig = min_uncertainty_eigenvalue(v);
    if (eval.min_uncertainty_eig < -kUncertaintyTolerance) {
        throw UnphysicalStateError("steady state violates the uncertainty relation (min eig = " +
                                   std::to_string(eval.min_uncertainty_eig) + ")");
    }
    eval.covariance = std::move(v);
    return eval;
}

double entanglement(const PointEvaluation& eval, const Bipartition& pair) {
    if (!eval.covariance) {
        throw UnstableSystemError("entanglement requested at an unstable operating point");
    }
    return log_negativity(reduce_bipartite(*eval.covariance, pair.first, pair.second));
}

Detunings OperatingSettings::to_detunings(double omega_m) const {
    Detunings d;
    d.delta_c = delta_c * omega_m;
    d.delta_w[0] = delta_w1 * omega_m;
    d.delta_w[1] = (tie_microwave_detunings ? -delta_w1 : delta_w2) * omega_m;
    return d;
}

namespace {

struct AxisEntry {
    AxisTarget target;
    std::string_view name;
};

constexpr std::array<AxisEntry, 11> kAxes{{
    {AxisTarget::DeltaC, "delta_c"},
    {AxisTarget::DeltaW, "delta_w"},
    {AxisTarget::DeltaW1, "delta_w1"},
    {AxisTarget::DeltaW2, "delta_w2"},
    {AxisTarget::Temperature, "temperature"},
    {AxisTarget::GapBoth, "gap_d"},
    {AxisTarget::Gap1, "gap_d1"},
    {AxisTarget::Gap2, "gap_d2"},
    {AxisTarget::PowerC, "power_c"},
    {AxisTarget::PowerWBoth, "power_w"},
    {AxisTarget::FreqWBoth, "freq_w"},
}};

}  // namespace

std::string_view axis_name(AxisTarget t) noexcept {
    for (const auto& e : kAxes) {
        if (e.target == t) {
            return e.name;
        }
    }
    return "?";
}

AxisTarget parse_axis(std::string_view name) {
    for (const auto& e : kAxes) {
        if (e.name == name) {
            return e.target;
        }
    }
    std::string known;
    for (const auto& e : kAxes) {
        known += known.empty() ? "" : ", ";
        known += e.name;
    }
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (known: " + known + ")");
}

bool axis_is_detuning(AxisTarget t) noexcept {
    return t == AxisTarget::DeltaC || t == AxisTarget::DeltaW || t == AxisTarget::DeltaW1 ||
           t == AxisTarget::DeltaW2;
}

double SweepAxis::value(int index) const noexcept {
    // Weighted form keeps x_i == -x_{n-1-i} exactly when start == -stop.
    const double n = static_cast<double>(count - 1);
    const double i = static_cast<double>(index);
    return (start * (n - i) + stop * i) / n;
}

void validate_spec(const SweepSpec& spec) {
    if (spec.axis.count < 2) {
        throw ConfigError("sweep.count must be >= 2");
    }
    if (!(spec.axis.start < spec.axis.stop)) {
        throw ConfigError("sweep.start must be < sweep.stop");
    }
    if (spec.bipartitions.empty()) {
        throw ConfigError("sweep.bipartitions must not be empty");
    }
    for (const auto& [s1, s2] : spec.bipartitions) {
        if (s1 == s2) {
            throw ConfigError("sweep.bipartitions: a pair must name two different subsystems");
        }
    }
    if (spec.fixed.tie_microwave_detunings && spec.axis.target == AxisTarget::DeltaW2) {
        throw ConfigError("sweep axis delta_w2 conflicts with tied microwave detunings");
    }
    validate_params(spec.base);
}

std::vector<GridPoint> expand_grid(const SweepSpec& spec) {
    validate_spec(spec);
    std::vector<GridPoint> grid;
    grid.reserve(static_cast<std::size_t>(spec.axis.count));
    for (int i = 0; i < spec.axis.count; ++i) {
        const double x = spec.axis.value(i);
        SystemParams p = spec.base;
        OperatingSettings ops = spec.fixed;
        switch (spec.axis.target) {
        case AxisTarget::DeltaC: ops.delta_c = x; break;
        case AxisTarget::DeltaW:
        case AxisTarget::DeltaW1: ops.delta_w1 = x; break;
        case AxisTarget::DeltaW2: ops.delta_w2 = x; break;
        case AxisTarget::Temperature: p.temperature = x; break;
        case AxisTarget::GapBoth: p.gap_d = {x, x}; break;
        case AxisTarget::Gap1: p.gap_d[0] = x; break;
        case AxisTarget::Gap2: p.gap_d[1] = x; break;
        case AxisTarget::PowerC: p.power_c = x; break;
        case AxisTarget::PowerWBoth: p.power_w = {x, x}; break;
        case AxisTarget::FreqWBoth: {
            const double w = constants::two_pi * x;
            p.omega_w = {w, w};
            break;
        }
        }
        validate_params(p);
        grid.push_back({static_cast<std::size_t>(i), x, p, ops.to_detunings(p.omega_m)});
    }
    return grid;
}

namespace {

SweepRow evaluate_row(const SweepSpec& spec, const GridPoint& point) {
    SweepRow row;
    row.index = point.index;
    row.axis_value = point.axis_value;
    row.entanglement.assign(spec.bipartitions.size(), std::nullopt);
    const double wm = point.params.omega_m;
    try {
        const PointEvaluation eval = evaluate_point(point.params, point.detunings);
        row.g_c_over_omega_m = eval.op.g_c / wm;
        row.g_w1_over_omega_m = eval.op.g_w[0] / wm;
        row.g_w2_over_omega_m = eval.op.g_w[1] / wm;
        row.stable = eval.stability.stable;
        row.max_real_eig_over_omega_m = eval.stability.max_real_eig / wm;
        if (row.stable) {
            for (std::size_t k = 0; k < spec.bipartitions.size(); ++k) {
                row.entanglement[k] = entanglement(eval, spec.bipartitions[k]);
            }
        }
    } catch (const NumericalError& e) {
        row.entanglement.assign(spec.bipartitions.size(), std::nullopt);
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
    const std::vector<GridPoint> grid = expand_grid(spec);
    std::vector<SweepRow> rows(grid.size());

    const unsigned workers = std::clamp<unsigned>(threads, 1U, static_cast<unsigned>(grid.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            rows[i] = evaluate_row(spec, grid[i]);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < grid.size(); i = next++) {
                    try {
                        rows[i] = evaluate_row(spec, grid[i]);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

}  // namespace omech
