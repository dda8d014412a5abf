#include "sgqgan/config.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <fmt/format.h>

#include "sgqgan/multiphase.hpp"
#include "sgqgan/process.hpp"
#include "sgqgan/state_learner.hpp"

namespace sgqgan {

using nlohmann::json;

namespace {

const std::set<std::string> kCommonKeys = {"command", "gains",  "model",  "iterations",
                                           "trials",  "seed",   "output", "log_iterations"};
const std::set<std::string> kGridNames = {"A", "a", "b", "background", "pairs", "s", "t"};

std::set<std::string> command_keys(Command c) {
    switch (c) {
        case Command::LearnState: return {"target", "initial"};
        case Command::Characterize: return {"process", "probes", "initial"};
        case Command::Multiphase: return {"scene"};
        case Command::Sweep: return {"experiment", "grid"};
    }
    return {};
}

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::SchemaError, fmt::format("{}: {}", path, msg));
}

[[noreturn]] void range_error(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::RangeError, fmt::format("{}: {}", path, msg));
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, fmt::format("expected a number, got {}", j.dump()));
    return j.get<double>();
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) range_error(path, fmt::format("{} must be non-negative", j.dump()));
    schema_error(path, fmt::format("expected an integer, got {}", j.dump()));
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, fmt::format("expected a string, got {}", j.dump()));
    return j.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) schema_error(fmt::format("{}.{}", path, key), "unknown key");
    }
}

std::string_view mode_name(MeasurementMode m) { return m == MeasurementMode::Analytic ? "analytic" : "sampled"; }

void validate_gains(const GainSchedule& g, const std::string& path) {
    auto check = [&](bool ok, const char* name, double v, const char* rule) {
        if (!ok) range_error(fmt::format("{}.{}", path, name), fmt::format("{} must be {}", v, rule));
    };
    check(g.a > 0, "a", g.a, "> 0");
    check(g.A >= 0, "A", g.A, ">= 0");
    check(g.s > 0, "s", g.s, "> 0");
    check(g.b > 0, "b", g.b, "> 0");
    check(g.t > 0, "t", g.t, "> 0");
}

void validate_model(const HomModelConfig& m, const std::string& path) {
    if (m.pairs_per_setting < 1) range_error(path + ".pairs", "must be >= 1");
    if (!(m.background_rate >= 0)) {
        range_error(path + ".background", fmt::format("{} must be >= 0", m.background_rate));
    }
}

void validate_payload(const ExperimentConfig& cfg) {
    auto guarded = [](const std::string& path, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            range_error(path, e.what());
        }
    };
    switch (cfg.effective_command()) {
        case Command::LearnState: {
            PureState target, initial;
            guarded("$.target", [&] { target = resolve_target(cfg.target); });
            guarded("$.initial", [&] { initial = resolve_target(cfg.initial); });
            if (target.dim() != initial.dim()) {
                range_error("$.initial", fmt::format("dimension {} does not match target dimension {}",
                                                     initial.dim(), target.dim()));
            }
            break;
        }
        case Command::Characterize: {
            guarded("$.process", [&] { parse_waveplates(cfg.process); });
            guarded("$.initial", [&] {
                if (resolve_target(cfg.initial).dim() != 2) throw Error(ErrorKind::DimensionMismatch, "not a qubit");
            });
            if (cfg.probes.size() < 2) range_error("$.probes", "need at least two probe states");
            for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
                guarded(fmt::format("$.probes[{}]", i), [&] {
                    if (parse_state(cfg.probes[i]).dim() != 2)
                        throw Error(ErrorKind::DimensionMismatch, "not a qubit");
                });
            }
            break;
        }
        case Command::Multiphase: {
            std::mt19937_64 rng(0);
            try {
                scene_from_json(cfg.scene, rng);
            } catch (const Error& e) {
                const std::string msg = fmt::format("$.scene: {}", e.what());
                throw Error(e.kind() == ErrorKind::SchemaError ? ErrorKind::SchemaError : ErrorKind::RangeError,
                            msg);
            } catch (const json::exception& e) {
                schema_error("$.scene", e.what());
            }
            break;
        }
        case Command::Sweep: break;
    }
}

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::LearnState: return "learn-state";
        case Command::Characterize: return "characterize";
        case Command::Multiphase: return "multiphase";
        case Command::Sweep: return "sweep";
    }
    return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::LearnState, Command::Characterize, Command::Multiphase, Command::Sweep})
        if (to_string(c) == name) return c;
    return std::nullopt;
}

std::size_t default_iterations(Command c) {
    switch (c) {
        case Command::Characterize: return 30;
        case Command::Multiphase: return kDefaultMultiphaseIterations;
        default: return 20;
    }
}

std::size_t default_trials(Command c) {
    switch (c) {
        case Command::Characterize: return 1;
        case Command::Multiphase: return kDefaultMultiphaseTrials;
        default: return 100;
    }
}

GainSchedule default_gains(Command c) {
    return c == Command::Multiphase ? multiphase_default_gains() : GainSchedule{};
}

void apply_override(ExperimentConfig& cfg, const std::string& name, double value) {
    if (name == "a") cfg.gains.a = value;
    else if (name == "A") cfg.gains.A = value;
    else if (name == "s") cfg.gains.s = value;
    else if (name == "b") cfg.gains.b = value;
    else if (name == "t") cfg.gains.t = value;
    else if (name == "background") cfg.model.background_rate = value;
    else if (name == "pairs") {
        if (!(value >= 1) || value != std::floor(value)) {
            range_error("$.grid.pairs", fmt::format("{} is not a positive integer", value));
        }
        cfg.model.pairs_per_setting = static_cast<std::uint64_t>(value);
    } else {
        schema_error("$.grid." + name, "not a sweepable parameter");
    }
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) schema_error("$", "config must be a JSON object");
    ExperimentConfig cfg;
    if (!j.contains("command")) schema_error("$.command", "missing required key");
    const std::string command = get_string(j.at("command"), "$.command");
    const auto parsed = parse_command(command);
    if (!parsed) range_error("$.command", fmt::format("unknown command '{}'", command));
    cfg.command = *parsed;

    if (cfg.command == Command::Sweep) {
        if (j.contains("experiment")) {
            const std::string exp = get_string(j.at("experiment"), "$.experiment");
            const auto e = parse_command(exp);
            if (!e || *e == Command::Sweep) range_error("$.experiment", fmt::format("cannot sweep '{}'", exp));
            cfg.experiment = *e;
        }
    }
    const Command effective = cfg.effective_command();

    std::set<std::string> allowed = kCommonKeys;
    for (const auto& k : command_keys(cfg.command)) allowed.insert(k);
    if (cfg.command == Command::Sweep)
        for (const auto& k : command_keys(effective)) allowed.insert(k);
    reject_unknown(j, allowed, "$");

    cfg.iterations = default_iterations(effective);
    cfg.trials = default_trials(effective);
    cfg.gains = default_gains(effective);

    if (j.contains("target")) cfg.target = get_string(j.at("target"), "$.target");
    if (j.contains("initial")) cfg.initial = get_string(j.at("initial"), "$.initial");
    if (j.contains("process")) cfg.process = get_string(j.at("process"), "$.process");
    if (j.contains("probes")) {
        const auto& p = j.at("probes");
        if (!p.is_array()) schema_error("$.probes", "expected an array of state literals");
        cfg.probes.clear();
        for (std::size_t i = 0; i < p.size(); ++i) cfg.probes.push_back(get_string(p[i], fmt::format("$.probes[{}]", i)));
    }
    if (j.contains("scene")) {
        if (!j.at("scene").is_object()) schema_error("$.scene", "expected an object");
        cfg.scene = j.at("scene");
    }

    if (j.contains("gains")) {
        const auto& g = j.at("gains");
        reject_unknown(g, {"a", "A", "s", "b", "t"}, "$.gains");
        if (g.contains("a")) cfg.gains.a = get_number(g.at("a"), "$.gains.a");
        if (g.contains("A")) cfg.gains.A = get_number(g.at("A"), "$.gains.A");
        if (g.contains("s")) cfg.gains.s = get_number(g.at("s"), "$.gains.s");
        if (g.contains("b")) cfg.gains.b = get_number(g.at("b"), "$.gains.b");
        if (g.contains("t")) cfg.gains.t = get_number(g.at("t"), "$.gains.t");
    }
    validate_gains(cfg.gains, "$.gains");

    if (j.contains("model")) {
        const auto& m = j.at("model");
        reject_unknown(m, {"mode", "pairs", "background"}, "$.model");
        if (m.contains("mode")) {
            const std::string mode = get_string(m.at("mode"), "$.model.mode");
            if (mode == "analytic") cfg.model.mode = MeasurementMode::Analytic;
            else if (mode == "sampled") cfg.model.mode = MeasurementMode::Sampled;
            else range_error("$.model.mode", fmt::format("'{}' is not analytic or sampled", mode));
        }
        if (m.contains("pairs")) cfg.model.pairs_per_setting = get_unsigned(m.at("pairs"), "$.model.pairs");
        if (m.contains("background")) cfg.model.background_rate = get_number(m.at("background"), "$.model.background");
    }
    validate_model(cfg.model, "$.model");

    if (j.contains("iterations")) cfg.iterations = get_unsigned(j.at("iterations"), "$.iterations");
    if (cfg.iterations < 1) range_error("$.iterations", fmt::format("{} must be >= 1", cfg.iterations));
    if (j.contains("trials")) cfg.trials = get_unsigned(j.at("trials"), "$.trials");
    if (cfg.trials < 1) range_error("$.trials", fmt::format("{} must be >= 1", cfg.trials));
    if (j.contains("seed")) cfg.seed = get_unsigned(j.at("seed"), "$.seed");
    if (j.contains("output")) cfg.output = get_string(j.at("output"), "$.output");
    if (j.contains("log_iterations")) {
        if (!j.at("log_iterations").is_boolean()) schema_error("$.log_iterations", "expected a boolean");
        cfg.log_iterations = j.at("log_iterations").get<bool>();
    }

    if (cfg.command == Command::Sweep) {
        if (!j.contains("grid")) schema_error("$.grid", "missing required key");
        const auto& g = j.at("grid");
        if (!g.is_object() || g.empty()) schema_error("$.grid", "expected a non-empty object");
        for (const auto& [name, values] : g.items()) {
            const std::string path = "$.grid." + name;
            if (!kGridNames.count(name)) schema_error(path, "not a sweepable parameter");
            if (!values.is_array() || values.empty()) schema_error(path, "expected a non-empty array of numbers");
            std::vector<double> vs;
            for (std::size_t i = 0; i < values.size(); ++i)
                vs.push_back(get_number(values[i], fmt::format("{}[{}]", path, i)));
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            for (double v : vs) {
                ExperimentConfig probe = cfg;
                apply_override(probe, name, v);
                validate_gains(probe.gains, path);
                validate_model(probe.model, path);
            }
            cfg.grid[name] = std::move(vs);
        }
    }

    validate_payload(cfg);
    return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_error("$", fmt::format("invalid JSON: {}", e.what()));
    }
    return config_from_json(j);
}

json to_json(const ExperimentConfig& cfg) {
    json j;
    j["command"] = std::string(to_string(cfg.command));
    const Command effective = cfg.effective_command();
    if (cfg.command == Command::Sweep) {
        j["experiment"] = std::string(to_string(cfg.experiment));
        json grid = json::object();
        for (const auto& [name, values] : cfg.grid) grid[name] = values;
        j["grid"] = grid;
    }
    switch (effective) {
        case Command::LearnState:
            j["target"] = cfg.target;
            j["initial"] = cfg.initial;
            break;
        case Command::Characterize:
            j["process"] = cfg.process;
            j["probes"] = cfg.probes;
            j["initial"] = cfg.initial;
            break;
        case Command::Multiphase: j["scene"] = cfg.scene; break;
        case Command::Sweep: break;
    }
    j["gains"] = {{"a", cfg.gains.a}, {"A", cfg.gains.A}, {"s", cfg.gains.s}, {"b", cfg.gains.b}, {"t", cfg.gains.t}};
    j["model"] = {{"mode", std::string(mode_name(cfg.model.mode))},
                  {"pairs", cfg.model.pairs_per_setting},
                  {"background", cfg.model.background_rate}};
    j["iterations"] = cfg.iterations;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["output"] = cfg.output;
    j["log_iterations"] = cfg.log_iterations;
    return j;
}

}  // namespace sgqgan
