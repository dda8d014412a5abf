#include "sgqgan/multiphase.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sgqgan/parallel.hpp"

namespace sgqgan {

GainSchedule multiphase_default_gains() {
    GainSchedule g;
    g.a = 30.0;
    return g;
}

double accuracy(const PhaseVector& psi, const PhaseVector& phi) {
    if (psi.size() != phi.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    fmt::format("{} true phases vs {} estimated phases", psi.size(), phi.size()));
    }
    if (psi.empty()) throw Error(ErrorKind::LengthMismatch, "accuracy of an empty phase vector");
    double sum = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) sum += (1.0 + std::cos(psi[k] - phi[k])) / 2.0;
    return std::clamp(sum / static_cast<double>(psi.size()), 0.0, 1.0);
}

double multiphase_objective(HomMeasurementModel& model, const PhaseScene& scene, const PhaseVector& probe) {
    PhaseScene probed = scene;
    probed.phi = probe;
    return 1.0 - model.measure_multiphase(probed).value;
}

void MultiphaseTask::validate() const {
    scene.validate();
    if (iterations < 1) throw Error(ErrorKind::RangeError, "iterations must be >= 1");
    if (trials < 1) throw Error(ErrorKind::RangeError, "trials must be >= 1");
    sched.validate();
    HomMeasurementModel{model};
}

MultiphaseTrial estimate_trial(const MultiphaseTask& task, std::size_t trial) {
    const std::uint64_t seed = trial_seed(task.seed, trial);
    std::mt19937_64 rng(stream_seed(seed, kDirectionStream));
    HomModelConfig model_cfg = task.model;
    model_cfg.rng_seed = stream_seed(seed, kMeasurementStream);
    HomMeasurementModel model(model_cfg);

    // One scratch scene reused for every probe evaluation.
    PhaseScene probed = task.scene;
    auto objective = [&](const PhaseVector& probe) {
        probed.phi = probe;
        return 1.0 - model.measure_multiphase(probed).value;
    };
    auto metric = [&](const PhaseVector& phi) { return accuracy(task.scene.psi, phi); };

    MultiphaseTrial out;
    out.accuracy.reserve(task.iterations);
    out.final_phases = run_with(objective, metric, task.scene.phi, task.sched, task.iterations, rng,
                                [&](const IterationLog& log) { out.accuracy.push_back(log.post_update_metric); });
    return out;
}

MultiphaseResult estimate(const MultiphaseTask& task) {
    task.validate();
    auto outcomes =
        run_trials<MultiphaseTrial>(task.trials, [&](std::size_t trial) { return estimate_trial(task, trial); });
    MultiphaseResult result;
    std::vector<std::vector<double>> series;
    for (auto& o : outcomes) {
        series.push_back(std::move(o.accuracy));
        result.final_phases.push_back(std::move(o.final_phases));
    }
    result.trajectory = aggregate(std::move(series));
    return result;
}

PhaseScene scene_from_json(const nlohmann::json& j, std::mt19937_64& rng) {
    if (!j.is_object()) throw Error(ErrorKind::SchemaError, "scene must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "n" && key != "A" && key != "sigma" && key != "psi" && key != "phi" && key != "frequencies") {
            throw Error(ErrorKind::SchemaError, fmt::format("unknown scene key '{}'", key));
        }
    }
    if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() < 1) {
        throw Error(ErrorKind::RangeError, "scene.n must be an integer >= 1");
    }
    const auto n = j.at("n").get<std::size_t>();
    const double sigma = j.value("sigma", 1.0);
    PhaseScene scene = uniform_scene(n, sigma, rng);
    auto read_vector = [&](const char* key) {
        const auto& v = j.at(key);
        if (!v.is_array() || v.size() != n) {
            throw Error(ErrorKind::LengthMismatch, fmt::format("scene.{} must have {} entries", key, n));
        }
        return v.get<std::vector<double>>();
    };
    if (j.contains("A")) scene.weights = read_vector("A");
    if (j.contains("psi")) {
        scene.psi = read_vector("psi");
        for (auto& p : scene.psi) p = wrap_phase(p);
    }
    if (j.contains("phi")) {
        scene.phi = read_vector("phi");
        for (auto& p : scene.phi) p = wrap_phase(p);
    }
    if (j.contains("frequencies")) {
        const auto& f = j.at("frequencies");
        if (!f.is_array() || f.size() != n) {
            throw Error(ErrorKind::LengthMismatch, fmt::format("scene.frequencies must have {} entries", n));
        }
        std::vector<BinFrequencies> bins;
        for (const auto& b : f) bins.push_back({b.at("signal").get<double>(), b.at("idler").get<double>(),
                                                b.at("pump").get<double>()});
        scene.frequencies = std::move(bins);
    }
    scene.validate();
    return scene;
}

nlohmann::json scene_to_json(const PhaseScene& scene) {
    nlohmann::json j = {{"n", scene.size()},
                        {"A", scene.weights},
                        {"sigma", scene.sigma},
                        {"psi", scene.psi},
                        {"phi", scene.phi}};
    if (scene.frequencies) {
        nlohmann::json bins = nlohmann::json::array();
        for (const auto& b : *scene.frequencies)
            bins.push_back({{"signal", b.signal}, {"idler", b.idler}, {"pump", b.pump}});
        j["frequencies"] = bins;
    }
    return j;
}

}  // namespace sgqgan
