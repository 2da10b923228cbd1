// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run all criteria, exit 1 if any fails
//   acceptance N [M...]   run only the listed criteria

#include "omech/constants.hpp"
#include "omech/gaussian.hpp"
#include "omech/output.hpp"
#include "omech/sweep.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace omech;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

SweepSpec with_count(SweepSpec spec, int count) {
    spec.axis.count = count;
    return spec;
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
    const SweepSpec spec = with_count(preset("fig3").at(1), 41);
    double worst_diff = 0;
    double worst_residual = 0;
    for (const GridPoint& g : expand_grid(spec)) {
        const OperatingPoint op = steady_state(g.params, g.detunings);
        const DriftMatrix a = drift_matrix(g.params, op);
        const DiffusionMatrix d = diffusion_matrix(g.params, op);
        const CovarianceMatrix v = solve_lyapunov(a, d);
        const CovarianceMatrix w = integrate_covariance_oracle(a, d, 1.0, 1.0 / g.params.omega_m);
        worst_diff = std::max(worst_diff, (v.v - w.v).cwiseAbs().maxCoeff());
        worst_residual = std::max(worst_residual, lyapunov_residual(a, d, v));
    }
    return {worst_diff <= 1e-6 && worst_residual <= 1e-10,
            "41 points; max |V - V_oracle| = " + num(worst_diff) + " (tol 1e-6), max residual = " +
                num(worst_residual) + " (tol 1e-10)"};
}

Outcome closed_form_states() {
    BipartiteCM vac;
    vac.v1 = vac.v2 = Eigen::Matrix2d::Identity() * kVacuumVariance;
    const bool vacuum_ok = log_negativity(vac) == 0.0;

    long double tmsv_err = 0;
    for (long double r : {0.0L, 0.1L, 0.5L, 1.0L, 2.0L, 5.0L}) {
        BasicBipartiteCM<long double> b;
        b.v1 = b.v2 = Eigen::Matrix<long double, 2, 2>::Identity() * (std::cosh(2 * r) / 2);
        b.v3 << std::sinh(2 * r) / 2, 0, 0, -std::sinh(2 * r) / 2;
        tmsv_err = std::max(tmsv_err, std::abs(log_negativity(b) - 2 * r));
    }

    SystemParams p = reference_params();
    p.power_c = 0.0;
    p.power_w = {0.0, 0.0};
    const double wm = p.omega_m;
    const OperatingPoint op = steady_state(p, {wm, {0.2 * wm, -0.2 * wm}});
    const CovarianceMatrix v = solve_lyapunov(drift_matrix(p, op), diffusion_matrix(p, op));
    const double expected = thermal_occupation(p.omega_m, p.temperature) + 0.5;
    const double thermal_err =
        std::max(std::abs(v.v(0, 0) / expected - 1), std::abs(v.v(1, 1) / expected - 1));

    return {vacuum_ok && tmsv_err <= 1e-10L && thermal_err <= 1e-10,
            std::string("vacuum E_N ") + (vacuum_ok ? "= 0" : "!= 0") + "; max |E_N - 2r| = " +
                num(static_cast<double>(tmsv_err)) + " (tol 1e-10); mechanical variance rel err = " +
                num(thermal_err) + " (tol 1e-10)"};
}

Outcome physicality() {
    double worst = std::numeric_limits<double>::infinity();
    long solved = 0;
    long failures = 0;
    for (const PresetInfo& info : preset_catalog()) {
        for (const SweepSpec& spec : preset(info.name)) {
            for (const GridPoint& g : expand_grid(spec)) {
                try {
                    const PointEvaluation e = evaluate_point(g.params, g.detunings);
                    if (e.covariance) {
                        ++solved;
                        worst = std::min(worst, e.min_uncertainty_eig);
                    }
                } catch (const NumericalError&) {
                    ++failures;
                }
            }
        }
    }
    return {failures == 0 && worst >= -kUncertaintyTolerance,
            std::to_string(solved) + " covariance matrices over all presets; min eig(V + i/2 Omega) = " +
                num(worst) + " (tol -1e-9); solver failures = " + std::to_string(failures)};
}

Outcome equal_frequency_symmetry() {
    double asym = 0;
    long unstable = 0;
    long failed = 0;
    for (const SweepSpec& spec : preset("fig3")) {
        const std::vector<SweepRow> rows = run_sweep(with_count(spec, 401));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const SweepRow& r = rows[i];
            const SweepRow& m = rows[rows.size() - 1 - i];
            unstable += r.stable ? 0 : 1;
            failed += r.error.empty() ? 0 : 1;
            if (r.entanglement[0] && m.entanglement[0]) {
                asym = std::max(asym, std::abs(*r.entanglement[0] - *m.entanglement[0]));
            }
        }
    }
    return {asym <= 1e-9 && unstable == 0 && failed == 0,
            "4 curves x 401 points; max |E_N(D) - E_N(-D)| = " + num(asym) + " (tol 1e-9); unstable = " +
                std::to_string(unstable) + ", failed = " + std::to_string(failed)};
}

/// Refines a stability edge between a stable and an unstable detuning.
double bisect_edge(const SystemParams& p, double stable_x, double unstable_x) {
    const double wm = p.omega_m;
    auto is_stable = [&](double x) {
        return stability(drift_matrix(p, steady_state(p, {wm, {x * wm, -x * wm}}))).stable;
    };
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (stable_x + unstable_x);
        (is_stable(mid) ? stable_x : unstable_x) = mid;
    }
    return 0.5 * (stable_x + unstable_x);
}

Outcome instability_window() {
    const SweepSpec spec = with_count(preset("fig2").at(0), 401);  // 9/3 GHz, [-0.8, 0.8]
    const std::vector<SweepRow> rows = run_sweep(spec);

    std::vector<std::size_t> bad;
    for (const SweepRow& r : rows) {
        if (!r.stable) bad.push_back(r.index);
    }
    if (bad.empty()) {
        return {false, "no unstable grid point found"};
    }
    const bool contiguous = bad.back() - bad.front() + 1 == bad.size();
    const bool positive = rows[bad.front()].axis_value > 0.0;
    const std::size_t lo = bad.front();
    const std::size_t hi = bad.back();
    const bool left_entangled =
        lo > 0 && std::any_of(rows.begin(), rows.begin() + static_cast<long>(lo),
                              [](const SweepRow& r) { return r.entanglement[0] && *r.entanglement[0] > 0; });
    const bool right_entangled =
        hi + 1 < rows.size() && std::any_of(rows.begin() + static_cast<long>(hi) + 1, rows.end(),
                                            [](const SweepRow& r) { return r.entanglement[0] && *r.entanglement[0] > 0; });

    const double lower = bisect_edge(spec.base, rows[lo - 1].axis_value, rows[lo].axis_value);
    const double upper = bisect_edge(spec.base, rows[hi + 1].axis_value, rows[hi].axis_value);

    std::ifstream in(std::string(OMECH_FIXTURE_DIR) + "/stability_windows.json");
    const auto fixture = nlohmann::json::parse(in);
    const auto& ref = fixture["windows"][0];
    const double ref_lower = ref["lower"].get<double>();
    const double ref_upper = ref["upper"].get<double>();
    const double edge_err = std::max(std::abs(lower - ref_lower), std::abs(upper - ref_upper));

    return {contiguous && positive && left_entangled && right_entangled && edge_err <= 0.005,
            "9/3 GHz window (" + num(lower) + ", " + num(upper) + ") omega_m, fixture (" + num(ref_lower) +
                ", " + num(ref_upper) + "), max edge error " + num(edge_err) + " (tol 0.005); " +
                (contiguous ? "contiguous" : "NOT contiguous") + ", " + (positive ? "Delta_w > 0" : "NOT Delta_w > 0") +
                ", entangled on both sides: " + (left_entangled && right_entangled ? "yes" : "no")};
}

Outcome gap_monotonicity() {
    const std::vector<SweepSpec> specs = preset("fig4");  // 20, 100, 500 nm
    std::vector<std::vector<SweepRow>> curves;
    for (const SweepSpec& s : specs) {
        curves.push_back(run_sweep(with_count(s, 401)));
    }
    long compared = 0;
    long violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curves[0].size(); ++i) {
        const auto& a = curves[0][i].entanglement[0];
        const auto& b = curves[1][i].entanglement[0];
        const auto& c = curves[2][i].entanglement[0];
        if (!(a && b && c)) continue;
        ++compared;
        violations += (*a >= *b && *b >= *c) ? 0 : 1;
        min_margin = std::min({min_margin, *a - *b, *b - *c});
    }
    return {compared > 0 && violations == 0,
            std::to_string(compared) + " mutually stable points; ordering violations = " +
                std::to_string(violations) + "; smallest margin = " + num(min_margin)};
}

/// First temperature at which E_N vanishes, refined by bisection.
double crossover_temperature(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    const Detunings det = spec.fixed.to_detunings(spec.base.omega_m);
    auto en_at = [&](double t) {
        SystemParams p = spec.base;
        p.temperature = t;
        return entanglement(evaluate_point(p, det), spec.bipartitions[0]);
    };
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].entanglement[0] && *rows[i].entanglement[0] == 0.0) {
            double lo = rows[i - 1].axis_value;
            double hi = rows[i].axis_value;
            for (int it = 0; it < 50; ++it) {
                const double mid = 0.5 * (lo + hi);
                (en_at(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    return std::numeric_limits<double>::infinity();  // entangled over the whole range
}

Outcome temperature_robustness() {
    const std::vector<SweepSpec> specs = preset("fig5");  // 3, 30, 300 GHz
    std::vector<double> crossover;
    for (const SweepSpec& s : specs) {
        crossover.push_back(crossover_temperature(s, run_sweep(with_count(s, 401))));
    }
    const SweepSpec& hot = specs.at(2);
    SystemParams p = hot.base;
    p.temperature = 10.0;
    const double en10 = entanglement(evaluate_point(p, hot.fixed.to_detunings(p.omega_m)), hot.bipartitions[0]);
    const bool ordered = std::is_sorted(crossover.begin(), crossover.end());
    return {en10 > 0.0 && ordered,
            "E_N(300 GHz, 10 K) = " + num(en10) + "; crossover T = " + num(crossover[0]) + " / " +
                num(crossover[1]) + " / " + num(crossover[2]) + " K (3/30/300 GHz), non-decreasing: " +
                (ordered ? "yes" : "no")};
}

Outcome tradeoff() {
    const SweepSpec spec = with_count(preset("fig6").at(0), 401);
    const std::vector<SweepRow> rows = run_sweep(spec);
    auto nearest = [&](double x) {
        return *std::min_element(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
            return std::abs(a.axis_value - x) < std::abs(b.axis_value - x);
        });
    };
    auto column = [&](Subsystem s1, Subsystem s2) {
        const auto it = std::find(spec.bipartitions.begin(), spec.bipartitions.end(), Bipartition{s1, s2});
        return static_cast<std::size_t>(it - spec.bipartitions.begin());
    };
    const std::size_t om1 = column(Subsystem::Opto, Subsystem::Micro1);
    const std::size_t om2 = column(Subsystem::Opto, Subsystem::Micro2);
    const std::size_t mm = column(Subsystem::Micro1, Subsystem::Micro2);

    const SweepRow at = nearest(1.0);
    const SweepRow mirror = nearest(-1.0);
    if (!at.stable || !mirror.stable) {
        return {false, "grid point nearest Delta_w = omega_m is unstable"};
    }
    const double om1_at = *at.entanglement[om1];
    const double mm_at = *at.entanglement[mm];
    return {om1_at > mm_at,
            "at Delta_w = " + num(at.axis_value) + ": E_N(Opto,Micro1) = " + num(om1_at) +
                ", E_N(Micro1,Micro2) = " + num(mm_at) + "; for reference E_N(Opto,Micro2) = " +
                num(*at.entanglement[om2]) + " here and E_N(Opto,Micro1) = " + num(*mirror.entanglement[om1]) +
                " at Delta_w = " + num(mirror.axis_value)};
}

Outcome determinism_throughput() {
    auto run_all = [] {
        std::ostringstream os;
        for (const SweepSpec& spec : preset("fig3")) {
            const SweepSpec s = with_count(spec, 401);
            write_sweep_csv(os, s, run_sweep(s, 1));
        }
        return os.str();
    };
    const auto t0 = std::chrono::steady_clock::now();
    const std::string first = run_all();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string second = run_all();
    const bool identical = first == second;
    return {identical && seconds < 10.0,
            "4 curves x 401 points single-threaded in " + num(seconds) + " s (limit 10 s); rerun " +
                (identical ? "bitwise identical" : "DIFFERS")};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "Lyapunov solve matches the time-integration oracle", oracle_equivalence},
        {2, "closed-form Gaussian states", closed_form_states},
        {3, "physicality of every solved covariance matrix", physicality},
        {4, "equal-frequency curves symmetric about zero detuning", equal_frequency_symmetry},
        {5, "9/3 GHz instability window", instability_window},
        {6, "smaller capacitor gap gives more entanglement", gap_monotonicity},
        {7, "entanglement survives 10 K at 300 GHz", temperature_robustness},
        {8, "optical-microwave entanglement exceeds microwave-microwave at Delta_w = omega_m", tradeoff},
        {9, "determinism and throughput", determinism_throughput},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::atoi(argv[i]));
    }

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.contains(c.id)) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << "  [" << o.detail
                  << "]\n";
    }
    return failures == 0 ? 0 : 1;
}
