#include "omech/output.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

namespace omech {

namespace {

using nlohmann::ordered_json;

constexpr std::array<const char*, 3> kCouplingColumns{"G_c_over_omega_m", "G_w1_over_omega_m", "G_w2_over_omega_m"};

ordered_json json_number(double x) {
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), end);
}

std::string entanglement_column(const Bipartition& pair) {
    return "EN_" + std::string(subsystem_name(pair.first)) + "_" + std::string(subsystem_name(pair.second));
}

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
    std::vector<std::string> cols{"index", "axis_name", "axis_value", "stable", "max_real_eig_over_omega_m"};
    for (const auto& pair : spec.bipartitions) {
        cols.push_back(entanglement_column(pair));
    }
    cols.insert(cols.end(), kCouplingColumns.begin(), kCouplingColumns.end());
    return cols;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    const std::vector<std::string> cols = sweep_columns(spec);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i ? "," : "") << cols[i];
    }
    os << '\n';
    const std::string_view axis = axis_name(spec.axis.target);
    for (const SweepRow& row : rows) {
        os << row.index << ',' << axis << ',' << format_double(row.axis_value) << ','
           << (row.stable ? "true" : "false") << ',' << format_double(row.max_real_eig_over_omega_m);
        for (const auto& en : row.entanglement) {
            os << ',';
            if (en) {
                os << format_double(*en);
            }
        }
        os << ',' << format_double(row.g_c_over_omega_m) << ',' << format_double(row.g_w1_over_omega_m) << ','
           << format_double(row.g_w2_over_omega_m) << '\n';
    }
}

void write_sweep_json(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    ordered_json out = ordered_json::array();
    const std::string axis(axis_name(spec.axis.target));
    for (const SweepRow& row : rows) {
        ordered_json obj;
        obj["index"] = row.index;
        obj["axis_name"] = axis;
        obj["axis_value"] = json_number(row.axis_value);
        obj["stable"] = row.stable;
        obj["max_real_eig_over_omega_m"] = json_number(row.max_real_eig_over_omega_m);
        for (std::size_t k = 0; k < spec.bipartitions.size(); ++k) {
            const auto& en = row.entanglement[k];
            obj[entanglement_column(spec.bipartitions[k])] = en ? json_number(*en) : ordered_json(nullptr);
        }
        obj[kCouplingColumns[0]] = json_number(row.g_c_over_omega_m);
        obj[kCouplingColumns[1]] = json_number(row.g_w1_over_omega_m);
        obj[kCouplingColumns[2]] = json_number(row.g_w2_over_omega_m);
        out.push_back(std::move(obj));
    }
    os << out.dump(2) << '\n';
}

namespace {

struct PointFields {
    std::vector<std::string> names;
    std::vector<std::optional<double>> values;
    bool stable = false;
};

PointFields point_fields(const PointEvaluation& eval, double omega_m) {
    PointFields f;
    f.stable = eval.stability.stable;
    auto add = [&](std::string name, std::optional<double> v) {
        f.names.push_back(std::move(name));
        f.values.push_back(v);
    };
    add("max_real_eig_over_omega_m", eval.stability.max_real_eig / omega_m);
    add(kCouplingColumns[0], eval.op.g_c / omega_m);
    add(kCouplingColumns[1], eval.op.g_w[0] / omega_m);
    add(kCouplingColumns[2], eval.op.g_w[1] / omega_m);
    for (const auto& pair : kAllBipartitions) {
        add(entanglement_column(pair), eval.covariance ? std::optional(entanglement(eval, pair)) : std::nullopt);
    }
    add("lyapunov_residual",
        eval.covariance ? std::optional(eval.lyapunov_residual) : std::nullopt);
    return f;
}

}  // namespace

void write_point_csv(std::ostream& os, const PointEvaluation& eval, double omega_m) {
    const PointFields f = point_fields(eval, omega_m);
    os << "stable";
    for (const auto& n : f.names) {
        os << ',' << n;
    }
    os << '\n' << (f.stable ? "true" : "false");
    for (const auto& v : f.values) {
        os << ',';
        if (v) {
            os << format_double(*v);
        }
    }
    os << '\n';
}

void write_point_json(std::ostream& os, const PointEvaluation& eval, double omega_m) {
    const PointFields f = point_fields(eval, omega_m);
    ordered_json obj;
    obj["stable"] = f.stable;
    for (std::size_t i = 0; i < f.names.size(); ++i) {
        obj[f.names[i]] = f.values[i] ? json_number(*f.values[i]) : ordered_json(nullptr);
    }
    os << obj.dump(2) << '\n';
}

}  // namespace omech
