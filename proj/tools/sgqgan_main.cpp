#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sgqgan/config.hpp"
#include "sgqgan/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string_view metric_name(sgqgan::Command c) {
    switch (c) {
        case sgqgan::Command::Characterize: return "process fidelity";
        case sgqgan::Command::Multiphase: return "accuracy";
        default: return "root fidelity";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-guided generative adversarial state learning with simulated HOM interference"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    for (const char* name : {"learn-state", "characterize", "multiphase", "sweep"}) {
        auto* sub = app.add_subcommand(name, fmt::format("run a {} experiment", name));
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--seed", seed, "master seed, overrides the config");
        sub->add_option("--out", out, "output path prefix, overrides the config");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    sgqgan::ExperimentConfig cfg;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << fmt::format("error: cannot read config '{}'\n", config_path);
            return kExitConfig;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(buffer.str());
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << fmt::format("error: SchemaError: $: invalid JSON: {}\n", e.what());
            return kExitConfig;
        }
        if (j.is_object() && !j.contains("command")) j["command"] = command;
        if (j.is_object() && j["command"] != command) {
            std::cerr << fmt::format("error: SchemaError: $.command: config says {} but CLI asked for {}\n",
                                     j["command"].dump(), command);
            return kExitConfig;
        }
        if (seed) j["seed"] = *seed;
        if (out) j["output"] = *out;
        cfg = sgqgan::config_from_json(j);
    } catch (const sgqgan::Error& e) {
        std::cerr << fmt::format("error: {}: {}\n", sgqgan::to_string(e.kind()), e.what());
        return kExitConfig;
    }

    try {
        const auto result = sgqgan::execute(cfg);
        for (const auto& f : result.files) std::cout << "wrote " << f << '\n';
        if (cfg.command != sgqgan::Command::Sweep) {
            std::cout << fmt::format("final mean {} {:.6f} (std {:.6f}) after {} iterations, {} trials\n",
                                     metric_name(cfg.command), result.metric.mean, result.metric.std,
                                     cfg.iterations, cfg.trials);
        }
    } catch (const sgqgan::Error& e) {
        std::istringstream lines(e.what());
        for (std::string line; std::getline(lines, line);) {
            std::cerr << fmt::format("error: {}: {}\n", sgqgan::to_string(e.kind()), line);
        }
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
