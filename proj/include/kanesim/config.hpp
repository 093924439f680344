#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kanesim/bloch.hpp"
#include "kanesim/device.hpp"

namespace kanesim {

// Bad or inconsistent configuration input; the message names the offending
// field. Maps to exit code 2 at the CLI boundary.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimulationSpec {
    double dt = 0.0;
    int n_steps = 0;
    int n_traj = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::uint64_t max_plan_samples = std::uint64_t{1} << 32;

    bool operator==(const SimulationSpec&) const = default;
};

struct OutputSpec {
    std::string dir = "out";
    int decimation = 1;

    bool operator==(const OutputSpec&) const = default;
};

// One experiment, fully described: device, noise level, initial state,
// sampling plan, output destination. The file form is a single JSON object
// with blocks "device", "noise", "initial_polarization" (optional, default
// (1,0,0)), "simulation", and "output" (optional).
struct RunConfig {
    DeviceParameters device;
    NoiseSpec noise;
    PolarizationVector initial_polarization{1.0, 0.0, 0.0};
    SimulationSpec simulation;
    OutputSpec output;

    bool operator==(const RunConfig&) const = default;
};

// Parses and validates a config object. Throws ConfigError with the field
// path on missing/mistyped/unknown fields, on out-of-range values, and when
// the noise block gives both lambda and epsilon but they disagree with the
// device conversion by more than 1e-9 relative.
RunConfig parse_run_config(const nlohmann::json& j);

// Reads the file, parses the JSON, and delegates to parse_run_config.
RunConfig load_run_config(const std::string& path);

// Serializes with both noise fields populated; parse(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

}  // namespace kanesim
