#include <catch2/catch_amalgamated.hpp>

#include "omech/constants.hpp"
#include "omech/errors.hpp"
#include "omech/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

using namespace omech;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SweepSpec with_count(SweepSpec spec, int count) {
    spec.axis.count = count;
    return spec;
}

}  // namespace

TEST_CASE("preset catalog", "[sweep][presets]") {
    const auto& catalog = preset_catalog();
    REQUIRE_FALSE(catalog.empty());
    for (const auto& info : catalog) {
        INFO(info.name);
        const auto specs = preset(info.name);
        CHECK_FALSE(specs.empty());
        for (const auto& s : specs) {
            CHECK_NOTHROW(validate_spec(s));
            CHECK_FALSE(s.label.empty());
        }
    }
    CHECK(preset("fig2").size() == 3);
    CHECK(preset("fig3").size() == 4);
    CHECK(preset("fig4").size() == 3);
    CHECK(preset("fig5").size() == 3);
    CHECK(preset("fig6").size() == 1);
    CHECK(preset("fig3")[1].label == "9GHz");
    CHECK(preset("fig6")[0].bipartitions.size() == 5);
    CHECK_THROWS_AS(preset("fig7"), ConfigError);
}

TEST_CASE("grid values", "[sweep][grid]") {
    const SweepAxis axis{AxisTarget::DeltaW, -0.8, 0.8, 401};
    CHECK(axis.value(0) == -0.8);
    CHECK(axis.value(400) == 0.8);
    CHECK(axis.value(200) == 0.0);
    for (int i = 0; i < 401; ++i) {
        CHECK(axis.value(i) == -axis.value(400 - i));
    }
    CHECK(kDefaultGridCount == 401);
    CHECK(SweepSpec{}.axis.count == 401);
}

TEST_CASE("grid expansion applies the axis", "[sweep][grid]") {
    SweepSpec spec = preset("fig3")[1];
    spec.axis.count = 5;
    const auto grid = expand_grid(spec);
    REQUIRE(grid.size() == 5);
    const double wm = spec.base.omega_m;
    CHECK(grid[0].detunings.delta_w[0] == -0.8 * wm);
    CHECK(grid[0].detunings.delta_w[1] == 0.8 * wm);
    CHECK(grid[0].detunings.delta_c == wm);

    SweepSpec temp = preset("fig5")[0];
    temp.axis.count = 3;
    const auto tgrid = expand_grid(temp);
    CHECK(tgrid[0].params.temperature == temp.axis.start);
    CHECK(tgrid[2].params.temperature == temp.axis.stop);
    CHECK(tgrid[1].axis_value == tgrid[1].params.temperature);

    SweepSpec gap = spec;
    gap.axis = {AxisTarget::GapBoth, 20e-9, 500e-9, 3};
    const auto ggrid = expand_grid(gap);
    CHECK(ggrid[2].params.gap_d == std::array<double, 2>{500e-9, 500e-9});

    SweepSpec freq = spec;
    freq.axis = {AxisTarget::FreqWBoth, 3e9, 9e9, 2};
    const auto fgrid = expand_grid(freq);
    CHECK_THAT(fgrid[1].params.omega_w[0], WithinRel(constants::two_pi * 9e9, 1e-15));
}

TEST_CASE("axis names round trip", "[sweep][grid]") {
    for (AxisTarget t : {AxisTarget::DeltaC, AxisTarget::DeltaW, AxisTarget::DeltaW1, AxisTarget::DeltaW2,
                         AxisTarget::Temperature, AxisTarget::GapBoth, AxisTarget::Gap1, AxisTarget::Gap2,
                         AxisTarget::PowerC, AxisTarget::PowerWBoth, AxisTarget::FreqWBoth}) {
        CHECK(parse_axis(axis_name(t)) == t);
    }
    CHECK_THROWS_AS(parse_axis("wavelength"), ConfigError);
}

TEST_CASE("malformed specs are rejected", "[sweep][grid]") {
    SweepSpec spec = preset("fig3")[0];
    SECTION("single point") {
        spec.axis.count = 1;
        CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    }
    SECTION("reversed range") {
        std::swap(spec.axis.start, spec.axis.stop);
        CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    }
    SECTION("no bipartitions") {
        spec.bipartitions.clear();
        CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    }
    SECTION("identical parties") {
        spec.bipartitions = {{Subsystem::Opto, Subsystem::Opto}};
        CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    }
    SECTION("bad physics") {
        spec.base.mu[0] = 2.0;
        CHECK_THROWS_AS(validate_spec(spec), ParameterError);
    }
}

TEST_CASE("equal-frequency curve is symmetric, stable and entangled", "[sweep]") {
    const auto rows = run_sweep(with_count(preset("fig3")[1], 81));
    REQUIRE(rows.size() == 81);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& r = rows[i];
        const SweepRow& m = rows[rows.size() - 1 - i];
        CHECK(r.index == i);
        CHECK(r.error.empty());
        CHECK(r.stable);
        REQUIRE(r.entanglement[0]);
        CHECK(*r.entanglement[0] > 0.0);
        CHECK_THAT(*r.entanglement[0], WithinAbs(*m.entanglement[0], 1e-9));
    }
}

TEST_CASE("unstable rows carry no entanglement", "[sweep]") {
    const auto rows = run_sweep(with_count(preset("fig2")[0], 161));
    int unstable = 0;
    for (const SweepRow& r : rows) {
        CHECK(r.error.empty());
        if (!r.stable) {
            ++unstable;
            CHECK_FALSE(r.entanglement[0].has_value());
            CHECK(r.max_real_eig_over_omega_m >= -kStabilityMargin);
            CHECK(r.axis_value > 0.0);
        } else {
            CHECK(r.entanglement[0].has_value());
        }
    }
    CHECK(unstable > 0);
}

TEST_CASE("undriven system is never entangled", "[sweep][property]") {
    SweepSpec spec = with_count(preset("fig6")[0], 21);
    spec.base.power_c = 0.0;
    spec.base.power_w = {0.0, 0.0};
    for (const SweepRow& r : run_sweep(spec)) {
        CHECK(r.stable);
        for (const auto& en : r.entanglement) {
            REQUIRE(en);
            CHECK(*en == 0.0);
        }
    }
}

TEST_CASE("smaller gap gives more microwave entanglement", "[sweep][property]") {
    const auto specs = preset("fig4");  // d = 20, 100, 500 nm
    std::vector<std::vector<SweepRow>> curves;
    for (const auto& s : specs) {
        curves.push_back(run_sweep(with_count(s, 41)));
    }
    for (std::size_t i = 0; i < curves[0].size(); ++i) {
        for (std::size_t k = 0; k + 1 < curves.size(); ++k) {
            const auto& a = curves[k][i];
            const auto& b = curves[k + 1][i];
            if (a.stable && b.stable) {
                CHECK(*a.entanglement[0] > *b.entanglement[0]);
            }
        }
    }
}

TEST_CASE("temperature suppresses entanglement", "[sweep][property]") {
    for (const auto& spec : preset("fig5")) {
        const auto rows = run_sweep(with_count(spec, 41));
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            REQUIRE(rows[i].entanglement[0]);
            CHECK(*rows[i + 1].entanglement[0] <= *rows[i].entanglement[0]);
        }
    }
}

TEST_CASE("sweeps are deterministic across thread counts", "[sweep][threads]") {
    const SweepSpec spec = with_count(preset("fig6")[0], 64);
    const auto serial = run_sweep(spec, 1);
    const auto again = run_sweep(spec, 1);
    const auto parallel = run_sweep(spec, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].index == parallel[i].index);
        CHECK(serial[i].stable == parallel[i].stable);
        CHECK(serial[i].max_real_eig_over_omega_m == parallel[i].max_real_eig_over_omega_m);
        CHECK(serial[i].entanglement == parallel[i].entanglement);
        CHECK(serial[i].entanglement == again[i].entanglement);
    }
}

TEST_CASE("single-point evaluation", "[sweep][point]") {
    const SweepSpec spec = preset("fig3")[1];
    const double wm = spec.base.omega_m;
    const PointEvaluation eval = evaluate_point(spec.base, {wm, {0.1 * wm, -0.1 * wm}});
    REQUIRE(eval.covariance);
    CHECK(eval.stability.stable);
    CHECK(eval.min_uncertainty_eig >= -kUncertaintyTolerance);
    CHECK(eval.lyapunov_residual <= 1e-10);
    CHECK(entanglement(eval, {Subsystem::Micro1, Subsystem::Micro2}) > 0.0);

    const SystemParams unequal = preset("fig2")[0].base;
    const PointEvaluation bad = evaluate_point(unequal, {wm, {0.05 * wm, -0.05 * wm}});
    CHECK_FALSE(bad.stability.stable);
    CHECK_FALSE(bad.covariance);
    CHECK_THROWS_AS(entanglement(bad, {Subsystem::Micro1, Subsystem::Micro2}), UnstableSystemError);
}

TEST_CASE("operating settings", "[sweep][point]") {
    OperatingSettings tied{1.0, 0.3, 99.0, true};
    const Detunings d = tied.to_detunings(2.0);
    CHECK(d.delta_c == 2.0);
    CHECK(d.delta_w[0] == 0.6);
    CHECK(d.delta_w[1] == -0.6);

    OperatingSettings free{1.0, 0.3, 0.2, false};
    CHECK(free.to_detunings(2.0).delta_w[1] == 0.4);
}
