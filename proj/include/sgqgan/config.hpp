#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sgqgan/interference.hpp"
#include "sgqgan/spsa.hpp"

namespace sgqgan {

enum class Command { LearnState, Characterize, Multiphase, Sweep };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

// Fully resolved experiment description. Every field carries its default,
// so the manifest written by execute() parses back to an equal config.
struct ExperimentConfig {
    Command command = Command::LearnState;

    // learn-state
    std::string target = "psi_t1";
    std::string initial = "V";

    // characterize
    std::string process = "hwp:22.5";
    std::vector<std::string> probes = {"H", "D", "R"};

    // multiphase; psi missing from the scene is drawn from the master seed
    nlohmann::json scene = {{"n", 10}};

    GainSchedule gains;
    HomModelConfig model;  // rng_seed unused; seeds derive from `seed`
    std::size_t iterations = 20;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string output = "sgqgan_";
    bool log_iterations = false;

    // sweep: swept experiment and grid over a, A, s, b, t, pairs, background
    Command experiment = Command::LearnState;
    std::map<std::string, std::vector<double>> grid;

    bool operator==(const ExperimentConfig&) const = default;

    // Command that actually runs (the swept experiment for sweeps).
    Command effective_command() const { return command == Command::Sweep ? experiment : command; }
};

std::size_t default_iterations(Command c);
std::size_t default_trials(Command c);
GainSchedule default_gains(Command c);

// Strict JSON schema. Errors are SchemaError / RangeError whose message
// starts with the JSON path of the offending field ("$.iterations: ...").
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Every field, defaults included, for the run manifest.
nlohmann::json to_json(const ExperimentConfig& cfg);

// Applies a grid override ("a", "A", "s", "b", "t", "pairs", "background").
void apply_override(ExperimentConfig& cfg, const std::string& name, double value);

}  // namespace sgqgan
