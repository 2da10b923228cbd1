#pragma once

// Run configuration: a JSON document with the blocks
//   params     (required)  physical parameters, SI, units in the key names
//   operating  (required)  detunings in units of omega_m
//   sweep      (optional)  one swept axis
//   output     (optional)  destination and format
// Key reference: docs/config.md.

#include "omech/model.hpp"
#include "omech/sweep.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omech {

enum class OutputFormat { Csv, Json };

std::string_view format_name(OutputFormat f) noexcept;
/// Throws ConfigError for anything other than "csv" or "json".
OutputFormat parse_format(std::string_view name);

struct SweepBlock {
    SweepAxis axis;
    std::vector<Bipartition> bipartitions{{Subsystem::Micro1, Subsystem::Micro2}};
    std::string label;

    bool operator==(const SweepBlock&) const = default;
};

struct OutputBlock {
    std::string path = "-";  ///< "-" is stdout
    OutputFormat format = OutputFormat::Csv;

    bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
    SystemParams params;
    OperatingSettings operating;
    std::optional<SweepBlock> sweep;
    OutputBlock output;

    bool operator==(const RunConfig&) const = default;
};

/// Parses and fully validates a configuration. Unknown keys, missing required
/// keys, wrong types and invariant violations throw ConfigError with the key
/// path in the message.
RunConfig parse_config(std::string_view text);

/// Canonical JSON form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

RunConfig config_from_spec(const SweepSpec& spec);

/// Throws ConfigError if the configuration has no sweep block.
SweepSpec sweep_spec(const RunConfig& config);

}  // namespace omech
