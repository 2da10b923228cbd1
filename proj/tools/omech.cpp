// omech: stationary entanglement of the two-microwave optoelectromechanical
// system. Subcommands: eval, sweep, presets, check.
//
// Exit codes: 0 success (unstable points are findings, not failures),
//             1 usage, configuration or I/O error,
//             2 numerical failure.

#include "omech/config.hpp"
#include "omech/errors.hpp"
#include "omech/output.hpp"
#include "omech/selfcheck.hpp"
#include "omech/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace omech;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct IoError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes through `emit` to stdout ("-") or to a file.
template <typename Emit>
void with_output(const std::string& path, Emit&& emit) {
    if (path.empty() || path == "-") {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file '" + path + "'");
    }
    emit(out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

/// fig3.csv + label 9GHz -> fig3_9GHz.csv
std::string curve_path(const std::string& path, const std::string& label) {
    const std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / (p.stem().string() + "_" + label + p.extension().string());
    return out.string();
}

void print_warnings(const SystemParams& p) {
    for (const auto& w : params_warnings(p)) {
        std::cerr << "warning: " << w << '\n';
    }
}

struct Common {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::string format;
    int curve = -1;
};

/// Resolves either --config or --preset into a list of run configurations.
std::vector<RunConfig> load_configs(const Common& c) {
    if (c.config_path.empty() == c.preset_name.empty()) {
        throw ConfigError("exactly one of --config or --preset is required");
    }
    std::vector<RunConfig> configs;
    if (!c.config_path.empty()) {
        configs.push_back(parse_config(read_file(c.config_path)));
    } else {
        const std::vector<SweepSpec> specs = preset(c.preset_name);
        if (c.curve >= 0) {
            if (c.curve >= static_cast<int>(specs.size())) {
                throw ConfigError("--curve " + std::to_string(c.curve) + " out of range; preset has " +
                                  std::to_string(specs.size()) + " curve(s)");
            }
            configs.push_back(config_from_spec(specs[static_cast<std::size_t>(c.curve)]));
        } else {
            for (const auto& s : specs) {
                configs.push_back(config_from_spec(s));
            }
        }
    }
    for (RunConfig& rc : configs) {
        if (!c.format.empty()) {
            rc.output.format = parse_format(c.format);
        }
        if (!c.out_path.empty()) {
            rc.output.path = c.out_path;
        }
    }
    return configs;
}

int cmd_eval(const Common& c, std::optional<double> delta_w) {
    std::vector<RunConfig> configs = load_configs(c);
    if (configs.size() > 1) {
        throw ConfigError("preset '" + c.preset_name + "' has several curves; choose one with --curve");
    }
    RunConfig& rc = configs.front();
    if (delta_w) {
        rc.operating.delta_w1 = *delta_w;
    }
    print_warnings(rc.params);
    const PointEvaluation eval = evaluate_point(rc.params, rc.operating.to_detunings(rc.params.omega_m));
    with_output(rc.output.path, [&](std::ostream& os) {
        if (rc.output.format == OutputFormat::Json) {
            write_point_json(os, eval, rc.params.omega_m);
        } else {
            write_point_csv(os, eval, rc.params.omega_m);
        }
    });
    return 0;
}

int cmd_sweep(const Common& c, int grid, unsigned threads) {
    const std::vector<RunConfig> configs = load_configs(c);
    bool numerical_failure = false;
    for (const RunConfig& rc : configs) {
        SweepSpec spec = sweep_spec(rc);
        if (grid > 0) {
            spec.axis.count = grid;
        }
        print_warnings(spec.base);
        const std::vector<SweepRow> rows = run_sweep(spec, threads);
        for (const SweepRow& r : rows) {
            if (!r.error.empty()) {
                numerical_failure = true;
                std::cerr << "row " << r.index << ": " << r.error << '\n';
            }
        }

        std::string path = rc.output.path;
        const bool to_stdout = path.empty() || path == "-";
        if (configs.size() > 1 && !to_stdout) {
            path = curve_path(path, spec.label);
        }
        with_output(path, [&](std::ostream& os) {
            if (configs.size() > 1 && to_stdout) {
                os << "# curve=" << spec.label << '\n';
            }
            if (rc.output.format == OutputFormat::Json) {
                write_sweep_json(os, spec, rows);
            } else {
                write_sweep_csv(os, spec, rows);
            }
        });
        if (!to_stdout) {
            std::cerr << "wrote " << rows.size() << " rows to " << path << '\n';
        }
    }
    return numerical_failure ? kExitNumerical : 0;
}

int cmd_presets(const std::string& dump, int curve, const std::string& out_path) {
    if (dump.empty()) {
        for (const auto& info : preset_catalog()) {
            const auto curves = preset(info.name);
            std::cout << info.name << "  (" << curves.size() << " curve" << (curves.size() > 1 ? "s" : "")
                      << ")  " << info.description << '\n';
            for (std::size_t k = 0; k < curves.size(); ++k) {
                std::cout << "    --curve " << k << "  " << curves[k].label << '\n';
            }
        }
        return 0;
    }
    const std::vector<SweepSpec> specs = preset(dump);
    const std::size_t k = curve < 0 ? 0 : static_cast<std::size_t>(curve);
    if (k >= specs.size()) {
        throw ConfigError("--curve out of range for preset '" + dump + "'");
    }
    with_output(out_path, [&](std::ostream& os) { os << serialize_config(config_from_spec(specs[k])); });
    return 0;
}

int cmd_check() {
    bool all = true;
    for (const CheckResult& r : run_self_checks()) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
        all = all && r.passed;
    }
    return all ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary entanglement of a two-microwave optoelectromechanical system"};
    app.require_subcommand(1);

    Common eval_opts;
    std::optional<double> delta_w;
    auto* eval = app.add_subcommand("eval", "evaluate a single operating point");
    eval->add_option("--config", eval_opts.config_path, "JSON configuration file");
    eval->add_option("--preset", eval_opts.preset_name, "use a figure preset instead of a config");
    eval->add_option("--curve", eval_opts.curve, "curve index within the preset")->check(CLI::NonNegativeNumber);
    eval->add_option("--delta-w", delta_w, "override Delta_w1 [omega_m]");
    eval->add_option("--out", eval_opts.out_path, "output file ('-' for stdout)");
    eval->add_option("--format", eval_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    Common sweep_opts;
    int grid = 0;
    unsigned threads = 1;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("--config", sweep_opts.config_path, "JSON configuration file with a sweep block");
    sweep->add_option("--preset", sweep_opts.preset_name, "figure preset (see `omech presets`)");
    sweep->add_option("--curve", sweep_opts.curve, "only this curve of the preset")->check(CLI::NonNegativeNumber);
    sweep->add_option("--grid", grid, "number of grid points")->check(CLI::Range(2, 10000000));
    sweep->add_option("--out", sweep_opts.out_path,
                      "output file; multi-curve presets write <stem>_<curve><ext> per curve");
    sweep->add_option("--format", sweep_opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--threads", threads, "worker threads")->check(CLI::Range(1U, 1024U));

    std::string dump;
    int dump_curve = -1;
    std::string dump_out;
    auto* presets = app.add_subcommand("presets", "list figure presets or dump one as a config");
    presets->add_option("--dump", dump, "print the configuration of a preset curve");
    presets->add_option("--curve", dump_curve, "curve index for --dump")->check(CLI::NonNegativeNumber);
    presets->add_option("--out", dump_out, "output file for --dump");

    auto* check = app.add_subcommand("check", "run the built-in oracle and invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(eval_opts, delta_w);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, grid, threads);
        if (presets->parsed()) return cmd_presets(dump, dump_curve, dump_out);
        if (check->parsed()) return cmd_check();
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
