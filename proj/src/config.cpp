#include "kanesim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace kanesim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError("config: " + message);
}

const json& require_object(const json& parent, const std::string& key) {
    if (!parent.contains(key)) fail("missing block \"" + key + "\"");
    const json& j = parent.at(key);
    if (!j.is_object()) fail("block \"" + key + "\" must be an object");
    return j;
}

void reject_unknown_keys(const json& obj, const std::string& block,
                         std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail("unknown field " + block + "." + key);
    }
}

double require_number(const json& obj, const std::string& block, const std::string& key) {
    const std::string path = block + "." + key;
    if (!obj.contains(key)) fail("missing field " + path);
    const json& j = obj.at(key);
    if (!j.is_number()) fail("field " + path + " must be a number");
    return j.get<double>();
}

int require_int(const json& obj, const std::string& block, const std::string& key) {
    const std::string path = block + "." + key;
    if (!obj.contains(key)) fail("missing field " + path);
    const json& j = obj.at(key);
    if (!j.is_number_integer()) fail("field " + path + " must be an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        fail("field " + path + " out of range");
    }
    return static_cast<int>(v);
}

std::uint64_t require_uint64(const json& obj, const std::string& block, const std::string& key) {
    const std::string path = block + "." + key;
    if (!obj.contains(key)) fail("missing field " + path);
    const json& j = obj.at(key);
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail("field " + path + " must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

DeviceParameters parse_device(const json& root) {
    const json& dev = require_object(root, "device");
    reject_unknown_keys(dev, "device", {"B_z", "B_ac", "V_0", "eta", "A_0"});
    DeviceParameters params;
    params.B_z = require_number(dev, "device", "B_z");
    params.B_ac = require_number(dev, "device", "B_ac");
    params.V_0 = require_number(dev, "device", "V_0");
    params.eta = require_number(dev, "device", "eta");
    params.A_0 = require_number(dev, "device", "A_0");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return params;
}

NoiseSpec parse_noise(const json& root, const DeviceParameters& device) {
    const json& noise = require_object(root, "noise");
    reject_unknown_keys(noise, "noise", {"lambda", "epsilon"});
    const bool has_lambda = noise.contains("lambda");
    const bool has_epsilon = noise.contains("epsilon");
    if (!has_lambda && !has_epsilon) {
        fail("noise block needs lambda or epsilon");
    }
    try {
        if (has_lambda && has_epsilon) {
            const double lambda = require_number(noise, "noise", "lambda");
            const double epsilon = require_number(noise, "noise", "epsilon");
            const double converted = epsilon_from_lambda(device, lambda);
            const double scale = std::max(std::abs(epsilon), std::abs(converted));
            if (std::abs(epsilon - converted) > 1e-9 * scale) {
                fail("noise.lambda and noise.epsilon disagree beyond 1e-9 relative");
            }
            return NoiseSpec{lambda, epsilon};
        }
        if (has_lambda) {
            return NoiseSpec::from_lambda(device, require_number(noise, "noise", "lambda"));
        }
        return NoiseSpec::from_epsilon(device, require_number(noise, "noise", "epsilon"));
    } catch (const std::invalid_argument& e) {
        fail(std::string("noise: ") + e.what());
    }
}

PolarizationVector parse_polarization(const json& root) {
    if (!root.contains("initial_polarization")) {
        return PolarizationVector{1.0, 0.0, 0.0};
    }
    const json& arr = root.at("initial_polarization");
    if (!arr.is_array() || arr.size() != 3 || !arr[0].is_number() || !arr[1].is_number() ||
        !arr[2].is_number()) {
        fail("initial_polarization must be an array of three numbers");
    }
    PolarizationVector p{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
    if (p.norm() > 1.0 + 1e-9) fail("initial_polarization is unphysical (norm > 1)");
    return p;
}

SimulationSpec parse_simulation(const json& root) {
    const json& sim = require_object(root, "simulation");
    reject_unknown_keys(sim, "simulation",
                        {"dt", "n_steps", "n_traj", "seed", "threads", "max_plan_samples"});
    SimulationSpec spec;
    spec.dt = require_number(sim, "simulation", "dt");
    if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) fail("simulation.dt must be positive");
    spec.n_steps = require_int(sim, "simulation", "n_steps");
    if (spec.n_steps < 1) fail("simulation.n_steps must be at least 1");
    spec.n_traj = require_int(sim, "simulation", "n_traj");
    if (spec.n_traj < 1) fail("simulation.n_traj must be at least 1");
    spec.seed = require_uint64(sim, "simulation", "seed");
    if (sim.contains("threads")) {
        spec.threads = require_int(sim, "simulation", "threads");
        if (spec.threads < 1) fail("simulation.threads must be at least 1");
    }
    if (sim.contains("max_plan_samples")) {
        spec.max_plan_samples = require_uint64(sim, "simulation", "max_plan_samples");
        if (spec.max_plan_samples == 0) fail("simulation.max_plan_samples must be positive");
    }
    return spec;
}

OutputSpec parse_output(const json& root) {
    OutputSpec out;
    if (!root.contains("output")) return out;
    const json& obj = require_object(root, "output");
    reject_unknown_keys(obj, "output", {"dir", "decimation"});
    if (obj.contains("dir")) {
        if (!obj.at("dir").is_string()) fail("field output.dir must be a string");
        out.dir = obj.at("dir").get<std::string>();
        if (out.dir.empty()) fail("field output.dir must not be empty");
    }
    if (obj.contains("decimation")) {
        out.decimation = require_int(obj, "output", "decimation");
        if (out.decimation < 1) fail("output.decimation must be at least 1");
    }
    return out;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) fail("top level must be an object");
    reject_unknown_keys(j, "config",
                        {"device", "noise", "initial_polarization", "simulation", "output"});
    RunConfig config;
    config.device = parse_device(j);
    config.noise = parse_noise(j, config.device);
    config.initial_polarization = parse_polarization(j);
    config.simulation = parse_simulation(j);
    config.output = parse_output(j);
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: JSON parse failure in " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

nlohmann::json to_json(const RunConfig& config) {
    nlohmann::json j;
    j["device"] = {
        {"B_z", config.device.B_z}, {"B_ac", config.device.B_ac}, {"V_0", config.device.V_0},
        {"eta", config.device.eta}, {"A_0", config.device.A_0},
    };
    j["noise"] = {{"lambda", config.noise.lambda}, {"epsilon", config.noise.epsilon}};
    j["initial_polarization"] = {config.initial_polarization.x, config.initial_polarization.y,
                                 config.initial_polarization.z};
    j["simulation"] = {
        {"dt", config.simulation.dt},
        {"n_steps", config.simulation.n_steps},
        {"n_traj", config.simulation.n_traj},
        {"seed", config.simulation.seed},
        {"threads", config.simulation.threads},
        {"max_plan_samples", config.simulation.max_plan_samples},
    };
    j["output"] = {{"dir", config.output.dir}, {"decimation", config.output.decimation}};
    return j;
}

}  // namespace kanesim
