#include "omech/selfcheck.hpp"

#include "omech/gaussian.hpp"
#include "omech/output.hpp"
#include "omech/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace omech {

namespace {

CheckResult run(std::string name, const std::function<std::string(bool&)>& body) {
    CheckResult r{std::move(name), false, {}};
    try {
        r.detail = body(r.passed);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

SweepSpec equal_9ghz(int count) {
    SweepSpec spec = preset("fig3").at(1);
    spec.axis.count = count;
    return spec;
}

}  // namespace

std::vector<CheckResult> run_self_checks() {
    std::vector<CheckResult> out;

    out.push_back(run("vacuum has zero negativity", [](bool& ok) {
        BipartiteCM b;
        b.v1 = b.v2 = Eigen::Matrix2d::Identity() * kVacuumVariance;
        const double en = log_negativity(b);
        ok = en == 0.0;
        return "E_N = " + format_double(en);
    }));

    out.push_back(run("two-mode squeezed vacuum E_N = 2r", [](bool& ok) {
        long double worst = 0;
        for (long double r : {0.0L, 0.1L, 0.5L, 1.0L, 2.0L, 5.0L}) {
            BasicBipartiteCM<long double> b;
            const long double c = std::cosh(2 * r) / 2;
            const long double s = std::sinh(2 * r) / 2;
            b.v1 = b.v2 = Eigen::Matrix<long double, 2, 2>::Identity() * c;
            b.v3 << s, 0, 0, -s;
            worst = std::max(worst, std::abs(log_negativity(b) - 2 * r));
        }
        ok = worst <= 1e-10L;
        return "max |E_N - 2r| = " + format_double(static_cast<double>(worst));
    }));

    out.push_back(run("Lyapunov solve matches time-integration oracle", [](bool& ok) {
        double worst = 0;
        for (const GridPoint& g : expand_grid(equal_9ghz(9))) {
            const OperatingPoint op = steady_state(g.params, g.detunings);
            const DriftMatrix a = drift_matrix(g.params, op);
            const DiffusionMatrix d = diffusion_matrix(g.params, op);
            const CovarianceMatrix v = solve_lyapunov(a, d);
            const CovarianceMatrix w = integrate_covariance_oracle(a, d, 1.0, 1.0 / g.params.omega_m);
            worst = std::max(worst, (v.v - w.v).cwiseAbs().maxCoeff());
        }
        ok = worst <= 1e-6;
        return "max entrywise difference = " + format_double(worst);
    }));

    out.push_back(run("Kronecker and Schur Lyapunov backends agree", [](bool& ok) {
        double worst = 0;
        for (const GridPoint& g : expand_grid(equal_9ghz(9))) {
            const OperatingPoint op = steady_state(g.params, g.detunings);
            const DriftMatrix a = drift_matrix(g.params, op);
            const DiffusionMatrix d = diffusion_matrix(g.params, op);
            const Matrix8 diff = solve_lyapunov(a, d, LyapunovMethod::Kronecker).v -
                                 solve_lyapunov(a, d, LyapunovMethod::Schur).v;
            const double scale = std::max(1.0, solve_lyapunov(a, d).v.cwiseAbs().maxCoeff());
            worst = std::max(worst, diff.cwiseAbs().maxCoeff() / scale);
        }
        ok = worst <= 1e-10;
        return "max entrywise difference / max(1, max|V|) = " + format_double(worst);
    }));

    out.push_back(run("equal-frequency sweep is stable, physical and symmetric", [](bool& ok) {
        const SweepSpec spec = equal_9ghz(41);
        const std::vector<SweepRow> rows = run_sweep(spec);
        bool all_stable = true;
        double asym = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const SweepRow& r = rows[i];
            const SweepRow& m = rows[rows.size() - 1 - i];
            all_stable = all_stable && r.stable && r.error.empty();
            if (r.entanglement[0] && m.entanglement[0]) {
                asym = std::max(asym, std::abs(*r.entanglement[0] - *m.entanglement[0]));
            }
        }
        ok = all_stable && asym <= 1e-9;
        return std::string(all_stable ? "all stable" : "UNSTABLE/FAILED rows") +
               ", max |E_N(D) - E_N(-D)| = " + format_double(asym);
    }));

    return out;
}

}  // namespace omech
