#include "sgqgan/state_learner.hpp"

#include "sgqgan/parallel.hpp"

namespace sgqgan {

const std::vector<NamedTarget>& builtin_targets() {
    static const std::vector<NamedTarget> targets = [] {
        const std::vector<std::pair<std::string, std::array<cplx, 2>>> quoted = {
            {"psi_t1", {cplx(1.0), cplx(0.0)}},
            {"psi_t2", {cplx(0.90), cplx(0.44)}},
            {"psi_t3", {cplx(0.69), cplx(0.72)}},
            {"psi_t4", {cplx(0.94), cplx(0.34)}},
            {"psi_t5", {cplx(0.75), cplx(0.07, 0.65)}},
            {"psi_t6", {cplx(0.82), cplx(0.57, 0.11)}},
        };
        std::vector<NamedTarget> out;
        for (const auto& [name, amps] : quoted) {
            out.push_back({name, amps, normalize({amps[0], amps[1]})});
        }
        return out;
    }();
    return targets;
}

PureState resolve_target(std::string_view spec) {
    for (const auto& t : builtin_targets())
        if (t.name == spec) return t.state;
    return parse_state(spec);
}

void StateLearningTask::validate() const {
    if (iterations < 1) throw Error(ErrorKind::RangeError, "iterations must be >= 1");
    if (trials < 1) throw Error(ErrorKind::RangeError, "trials must be >= 1");
    if (target.dim() != initial.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("target has dimension {}, initial state {}", target.dim(), initial.dim()));
    }
    sched.validate();
    HomMeasurementModel{model};
}

TrialOutcome learn_trial(const StateLearningTask& task, std::size_t trial) {
    const std::uint64_t seed = trial_seed(task.seed, trial);
    std::mt19937_64 rng(stream_seed(seed, kDirectionStream));
    HomModelConfig model_cfg = task.model;
    model_cfg.rng_seed = stream_seed(seed, kMeasurementStream);
    HomMeasurementModel model(model_cfg);
    model.set_recording(task.keep_logs);

    TrialOutcome out;
    out.fidelity.reserve(task.iterations);
    auto objective = [&](const PureState& probe) { return model.measure_overlap(task.target, probe).value; };
    auto metric = [&](const PureState& p) { return root_fidelity(p, task.target); };
    out.final_state = run_with(objective, metric, task.initial, task.sched, task.iterations, rng,
                               [&](const IterationLog& log) {
                                   out.fidelity.push_back(log.post_update_metric);
                                   if (task.keep_logs) out.logs.push_back(log);
                               });
    if (task.keep_logs) out.records = model.records();
    return out;
}

LearningResult learn(const StateLearningTask& task) {
    task.validate();
    auto outcomes = run_trials<TrialOutcome>(task.trials, [&](std::size_t trial) { return learn_trial(task, trial); });

    LearningResult result;
    std::vector<std::vector<double>> series;
    for (auto& o : outcomes) {
        series.push_back(std::move(o.fidelity));
        result.final_states.push_back(std::move(o.final_state));
        if (task.keep_logs) {
            result.logs.push_back(std::move(o.logs));
            result.records.push_back(std::move(o.records));
        }
    }
    result.trajectory = aggregate(std::move(series));
    return result;
}

}  // namespace sgqgan
