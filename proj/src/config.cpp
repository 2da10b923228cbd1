#include "omech/config.hpp"

#include "omech/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <initializer_list>
#include <set>

namespace omech {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

std::string join(const std::string& parent, std::string_view key) {
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string list(std::initializer_list<std::string_view> keys) {
    std::string out;
    for (auto k : keys) {
        out += out.empty() ? "" : ", ";
        out += k;
    }
    return out;
}

/// Rejects keys outside `allowed`.
void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(join(path, key), "unknown key (allowed: " + list(allowed) + ")");
        }
    }
}

const json& require_key(const json& obj, const std::string& path, std::string_view key) {
    const auto it = obj.find(std::string(key));
    if (it == obj.end()) {
        fail(join(path, key), "missing required key");
    }
    return *it;
}

const json& require_object(const json& obj, const std::string& path, std::string_view key) {
    const json& v = require_key(obj, path, key);
    if (!v.is_object()) {
        fail(join(path, key), "expected an object");
    }
    return v;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) {
        fail(path, std::string("expected a number, got ") + v.type_name());
    }
    return v.get<double>();
}

double number(const json& obj, const std::string& path, std::string_view key) {
    return as_number(require_key(obj, path, key), join(path, key));
}

/// A per-circuit pair: either [v1, v2] or a single number applied to both.
std::array<double, 2> pair(const json& obj, const std::string& path, std::string_view key) {
    const json& v = require_key(obj, path, key);
    const std::string p = join(path, key);
    if (v.is_number()) {
        const double x = v.get<double>();
        return {x, x};
    }
    if (!v.is_array() || v.size() != 2) {
        fail(p, "expected a number or an array of two numbers");
    }
    return {as_number(v[0], p + "[0]"), as_number(v[1], p + "[1]")};
}

SystemParams parse_params(const json& obj) {
    const std::string path = "params";
    check_keys(obj, path,
               {"omega_m_rad_s", "q_factor", "mass_kg", "wavelength_m", "cavity_length_m", "kappa_c_rad_s",
                "power_c_w", "omega_w_rad_s", "kappa_w_rad_s", "power_w_w", "gap_m", "mu", "temperature_k"});
    SystemParams p;
    p.omega_m = number(obj, path, "omega_m_rad_s");
    p.q_factor = number(obj, path, "q_factor");
    p.mass = number(obj, path, "mass_kg");
    p.lambda_drive = number(obj, path, "wavelength_m");
    p.cavity_length = number(obj, path, "cavity_length_m");
    p.kappa_c = number(obj, path, "kappa_c_rad_s");
    p.power_c = number(obj, path, "power_c_w");
    p.omega_w = pair(obj, path, "omega_w_rad_s");
    p.kappa_w = pair(obj, path, "kappa_w_rad_s");
    p.power_w = pair(obj, path, "power_w_w");
    p.gap_d = pair(obj, path, "gap_m");
    p.mu = pair(obj, path, "mu");
    p.temperature = number(obj, path, "temperature_k");
    try {
        return validate_params(p);
    } catch (const ParameterError& e) {
        fail(path, e.what());
    }
}

OperatingSettings parse_operating(const json& obj) {
    const std::string path = "operating";
    check_keys(obj, path,
               {"delta_c_over_omega_m", "delta_w1_over_omega_m", "delta_w2_over_omega_m", "tie_microwave_detunings"});
    OperatingSettings ops;
    ops.delta_c = number(obj, path, "delta_c_over_omega_m");
    ops.delta_w1 = number(obj, path, "delta_w1_over_omega_m");
    ops.delta_w2 = obj.contains("delta_w2_over_omega_m") ? number(obj, path, "delta_w2_over_omega_m") : 0.0;
    if (const auto it = obj.find("tie_microwave_detunings"); it != obj.end()) {
        if (!it->is_boolean()) {
            fail(join(path, "tie_microwave_detunings"), "expected a boolean");
        }
        ops.tie_microwave_detunings = it->get<bool>();
    }
    for (double v : {ops.delta_c, ops.delta_w1, ops.delta_w2}) {
        if (!std::isfinite(v)) {
            fail(path, "detunings must be finite");
        }
    }
    return ops;
}

SweepBlock parse_sweep(const json& obj) {
    const std::string path = "sweep";
    check_keys(obj, path, {"axis", "start", "stop", "count", "bipartitions", "label"});
    SweepBlock s;
    const json& axis = require_key(obj, path, "axis");
    if (!axis.is_string()) {
        fail(join(path, "axis"), "expected a string");
    }
    try {
        s.axis.target = parse_axis(axis.get<std::string>());
    } catch (const ConfigError& e) {
        fail(join(path, "axis"), e.what());
    }
    s.axis.start = number(obj, path, "start");
    s.axis.stop = number(obj, path, "stop");
    s.axis.count = kDefaultGridCount;
    if (const auto it = obj.find("count"); it != obj.end()) {
        if (!it->is_number_integer()) {
            fail(join(path, "count"), "expected an integer");
        }
        s.axis.count = it->get<int>();
    }
    if (s.axis.count < 2) {
        fail(join(path, "count"), "must be >= 2");
    }
    if (!(s.axis.start < s.axis.stop)) {
        fail(path, "start must be < stop");
    }
    if (const auto it = obj.find("bipartitions"); it != obj.end()) {
        const std::string p = join(path, "bipartitions");
        if (!it->is_array() || it->empty()) {
            fail(p, "expected a non-empty array of [party, party] pairs");
        }
        s.bipartitions.clear();
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& entry = (*it)[i];
            const std::string pi = p + "[" + std::to_string(i) + "]";
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string()) {
                fail(pi, "expected [\"<subsystem>\", \"<subsystem>\"]");
            }
            try {
                const Subsystem a = parse_subsystem(entry[0].get<std::string>());
                const Subsystem b = parse_subsystem(entry[1].get<std::string>());
                if (a == b) {
                    fail(pi, "the two parties must differ");
                }
                s.bipartitions.emplace_back(a, b);
            } catch (const std::invalid_argument& e) {
                fail(pi, e.what());
            }
        }
    }
    if (const auto it = obj.find("label"); it != obj.end()) {
        if (!it->is_string()) {
            fail(join(path, "label"), "expected a string");
        }
        s.label = it->get<std::string>();
    }
    return s;
}

OutputBlock parse_output(const json& obj) {
    const std::string path = "output";
    check_keys(obj, path, {"path", "format"});
    OutputBlock out;
    if (const auto it = obj.find("path"); it != obj.end()) {
        if (!it->is_string() || it->get<std::string>().empty()) {
            fail(join(path, "path"), "expected a non-empty string");
        }
        out.path = it->get<std::string>();
    }
    if (const auto it = obj.find("format"); it != obj.end()) {
        if (!it->is_string()) {
            fail(join(path, "format"), "expected a string");
        }
        try {
            out.format = parse_format(it->get<std::string>());
        } catch (const ConfigError& e) {
            fail(join(path, "format"), e.what());
        }
    }
    return out;
}

}  // namespace

std::string_view format_name(OutputFormat f) noexcept {
    return f == OutputFormat::Json ? "json" : "csv";
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

RunConfig parse_config(std::string_view text) {
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        throw ConfigError("config is empty; required top-level keys: params, operating");
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object with keys params, operating");
    }
    check_keys(doc, "", {"params", "operating", "sweep", "output"});

    RunConfig config;
    config.params = parse_params(require_object(doc, "", "params"));
    config.operating = parse_operating(require_object(doc, "", "operating"));
    if (doc.contains("sweep")) {
        config.sweep = parse_sweep(require_object(doc, "", "sweep"));
        if (config.operating.tie_microwave_detunings && config.sweep->axis.target == AxisTarget::DeltaW2) {
            fail("sweep.axis", "delta_w2 cannot be swept while tie_microwave_detunings is true");
        }
    }
    if (doc.contains("output")) {
        config.output = parse_output(require_object(doc, "", "output"));
    }
    return config;
}

std::string serialize_config(const RunConfig& config) {
    const SystemParams& p = config.params;
    ordered_json doc;
    ordered_json& params = doc["params"];
    params["omega_m_rad_s"] = p.omega_m;
    params["q_factor"] = p.q_factor;
    params["mass_kg"] = p.mass;
    params["wavelength_m"] = p.lambda_drive;
    params["cavity_length_m"] = p.cavity_length;
    params["kappa_c_rad_s"] = p.kappa_c;
    params["power_c_w"] = p.power_c;
    params["omega_w_rad_s"] = p.omega_w;
    params["kappa_w_rad_s"] = p.kappa_w;
    params["power_w_w"] = p.power_w;
    params["gap_m"] = p.gap_d;
    params["mu"] = p.mu;
    params["temperature_k"] = p.temperature;

    ordered_json& ops = doc["operating"];
    ops["delta_c_over_omega_m"] = config.operating.delta_c;
    ops["delta_w1_over_omega_m"] = config.operating.delta_w1;
    ops["delta_w2_over_omega_m"] = config.operating.delta_w2;
    ops["tie_microwave_detunings"] = config.operating.tie_microwave_detunings;

    if (config.sweep) {
        const SweepBlock& s = *config.sweep;
        ordered_json& sw = doc["sweep"];
        sw["axis"] = std::string(axis_name(s.axis.target));
        sw["start"] = s.axis.start;
        sw["stop"] = s.axis.stop;
        sw["count"] = s.axis.count;
        ordered_json pairs = ordered_json::array();
        for (const auto& [a, b] : s.bipartitions) {
            pairs.push_back(ordered_json::array({std::string(subsystem_name(a)), std::string(subsystem_name(b))}));
        }
        sw["bipartitions"] = pairs;
        sw["label"] = s.label;
    }

    doc["output"]["path"] = config.output.path;
    doc["output"]["format"] = std::string(format_name(config.output.format));
    return doc.dump(2) + "\n";
}

RunConfig config_from_spec(const SweepSpec& spec) {
    RunConfig config;
    config.params = spec.base;
    config.operating = spec.fixed;
    config.sweep = SweepBlock{spec.axis, spec.bipartitions, spec.label};
    return config;
}

SweepSpec sweep_spec(const RunConfig& config) {
    if (!config.sweep) {
        throw ConfigError("sweep: block is missing; a sweep needs axis, start and stop");
    }
    SweepSpec spec;
    spec.label = config.sweep->label;
    spec.base = config.params;
    spec.fixed = config.operating;
    spec.axis = config.sweep->axis;
    spec.bipartitions = config.sweep->bipartitions;
    return spec;
}

}  // namespace omech
