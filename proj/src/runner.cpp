#include "sgqgan/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sgqgan/parallel.hpp"

namespace sgqgan {

using nlohmann::json;

namespace {

class ArtifactWriter {
public:
    explicit ArtifactWriter(std::string prefix) : prefix_(std::move(prefix)) {}

    template <class Fn>
    void write(const std::string& name, Fn&& fill) {
        const std::string path = prefix_ + name;
        const std::filesystem::path parent = std::filesystem::path(path).parent_path();
        std::error_code ec;
        if (!parent.empty()) std::filesystem::create_directories(parent, ec);
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}' for writing", path));
        fill(os);
        os.flush();
        if (!os) throw Error(ErrorKind::IoError, fmt::format("failed writing '{}'", path));
        files_.push_back(path);
    }

    void write_json(const std::string& name, const json& j) {
        write(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    }

    std::vector<std::string> files() && { return std::move(files_); }

private:
    std::string prefix_;
    std::vector<std::string> files_;
};

json matrix_to_json(const Mat2& m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

FinalMetric final_metric_of(const std::vector<double>& values) {
    FinalMetric m;
    std::vector<std::vector<double>> columns;
    for (double v : values) columns.push_back({v});
    const Trajectory t = aggregate(std::move(columns));
    m.mean = t.final_mean();
    m.std = t.std.empty() ? 0.0 : t.std.back();
    return m;
}

FinalMetric run_for_metric(const ExperimentConfig& cfg) {
    switch (cfg.effective_command()) {
        case Command::LearnState: {
            const auto r = learn(make_learning_task(cfg));
            return {r.trajectory.final_mean(), r.trajectory.final_std()};
        }
        case Command::Characterize: return final_metric_of(run_characterization(cfg).process_fidelity);
        case Command::Multiphase: {
            const auto r = estimate(make_multiphase_task(cfg));
            return {r.trajectory.final_mean(), r.trajectory.final_std()};
        }
        case Command::Sweep: break;
    }
    throw Error(ErrorKind::SchemaError, "$.experiment: sweeps cannot be nested");
}

}  // namespace

StateLearningTask make_learning_task(const ExperimentConfig& cfg) {
    StateLearningTask task;
    task.target = resolve_target(cfg.target);
    task.initial = resolve_target(cfg.initial);
    task.sched = cfg.gains;
    task.model = cfg.model;
    task.iterations = cfg.iterations;
    task.trials = cfg.trials;
    task.seed = cfg.seed;
    task.keep_logs = cfg.log_iterations;
    return task;
}

MultiphaseTask make_multiphase_task(const ExperimentConfig& cfg) {
    std::mt19937_64 rng(stream_seed(cfg.seed, kSceneStream));
    MultiphaseTask task;
    task.scene = scene_from_json(cfg.scene, rng);
    task.sched = cfg.gains;
    task.model = cfg.model;
    task.iterations = cfg.iterations;
    task.trials = cfg.trials;
    task.seed = cfg.seed;
    return task;
}

CharacterizationRun run_characterization(const ExperimentConfig& cfg) {
    CharacterizationRun run;
    run.hidden = parse_waveplates(cfg.process);
    for (const auto& p : cfg.probes) run.probes.push_back(parse_state(p));
    const BlackBoxProcess box(run.hidden);
    StateLearningTask base = make_learning_task(cfg);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        base.seed = trial_seed(cfg.seed, i);
        try {
            run.trials.push_back(characterize(box, run.probes, base));
        } catch (const Error& e) {
            throw e.with_context(fmt::format("trial {}", i));
        }
        run.process_fidelity.push_back(process_fidelity(run.trials.back().unitary, run.hidden));
    }
    return run;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
    if (cfg.command != Command::Sweep) {
        ExperimentConfig single = cfg;
        return {SweepRow{{}, run_for_metric(single)}};
    }
    std::vector<std::pair<std::string, std::vector<double>>> axes(cfg.grid.begin(), cfg.grid.end());
    std::vector<std::size_t> index(axes.size(), 0);
    std::vector<SweepRow> rows;
    while (true) {
        ExperimentConfig point = cfg;
        point.command = cfg.experiment;
        point.grid.clear();
        SweepRow row;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const double v = axes[a].second[index[a]];
            apply_override(point, axes[a].first, v);
            row.params.emplace_back(axes[a].first, v);
        }
        row.metric = run_for_metric(point);
        rows.push_back(std::move(row));

        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++index[a] < axes[a].second.size()) break;
            index[a] = 0;
            if (a == 0) return rows;
        }
        if (axes.empty()) return rows;
    }
}

ExecuteResult execute(const ExperimentConfig& cfg) {
    ExecuteResult result;
    ArtifactWriter out(cfg.output);

    switch (cfg.command) {
        case Command::LearnState: {
            const auto r = learn(make_learning_task(cfg));
            out.write_json("manifest.json", to_json(cfg));
            out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, r.trajectory, "fidelity"); });
            out.write("aggregate.csv", [&](std::ostream& os) { write_aggregate_csv(os, r.trajectory); });
            out.write("final_states.csv", [&](std::ostream& os) {
                os << "trial_id,root_fidelity,state\n";
                const PureState target = resolve_target(cfg.target);
                for (std::size_t i = 0; i < r.final_states.size(); ++i) {
                    os << fmt::format("{},{:.17g},\"{}\"\n", i, root_fidelity(r.final_states[i], target),
                                      format_state(r.final_states[i]));
                }
            });
            if (cfg.log_iterations) {
                for (std::size_t i = 0; i < r.logs.size(); ++i) {
                    out.write(fmt::format("iterations_{}.csv", i),
                              [&](std::ostream& os) { write_iteration_log_csv(os, r.logs[i]); });
                    out.write(fmt::format("coincidences_{}.csv", i),
                              [&](std::ostream& os) { write_records_csv(os, r.records[i]); });
                }
            }
            result.metric = {r.trajectory.final_mean(), r.trajectory.final_std()};
            break;
        }
        case Command::Characterize: {
            const auto run = run_characterization(cfg);
            std::vector<std::vector<double>> series;
            json trials = json::array();
            for (std::size_t i = 0; i < run.trials.size(); ++i) {
                const auto& c = run.trials[i];
                for (const auto& s : c.trajectory.series) series.push_back(s);
                json learned = json::array();
                for (const auto& s : c.learned_outputs) learned.push_back(format_state(s));
                trials.push_back({{"trial_id", i},
                                  {"unitary", matrix_to_json(c.unitary.matrix())},
                                  {"process", chi_to_json(c.process)},
                                  {"learned_outputs", learned},
                                  {"process_fidelity", run.process_fidelity[i]}});
            }
            const Trajectory traj = aggregate(std::move(series));
            result.metric = final_metric_of(run.process_fidelity);
            json report = {{"hidden_unitary", matrix_to_json(run.hidden.matrix())},
                           {"hidden_process", chi_to_json(chi_from_unitary(run.hidden))},
                           {"trials", trials},
                           {"mean_process_fidelity", result.metric.mean}};
            out.write_json("manifest.json", to_json(cfg));
            out.write_json("chi.json", report);
            // trial_id = trial * probes + probe
            out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, traj, "fidelity"); });
            out.write("aggregate.csv", [&](std::ostream& os) { write_aggregate_csv(os, traj); });
            break;
        }
        case Command::Multiphase: {
            const MultiphaseTask task = make_multiphase_task(cfg);
            const auto r = estimate(task);
            out.write_json("manifest.json", to_json(cfg));
            out.write_json("scene.json", scene_to_json(task.scene));
            out.write("trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, r.trajectory, "accuracy"); });
            out.write("aggregate.csv", [&](std::ostream& os) { write_aggregate_csv(os, r.trajectory); });
            result.metric = {r.trajectory.final_mean(), r.trajectory.final_std()};
            break;
        }
        case Command::Sweep: {
            const auto rows = sweep(cfg);
            out.write_json("manifest.json", to_json(cfg));
            out.write("sweep.csv", [&](std::ostream& os) {
                for (const auto& [name, _] : cfg.grid) os << name << ',';
                os << "mean_final,std_final\n";
                for (const auto& row : rows) {
                    for (const auto& [_, v] : row.params) os << fmt::format("{:.17g},", v);
                    os << fmt::format("{:.17g},{:.17g}\n", row.metric.mean, row.metric.std);
                }
            });
            break;
        }
    }
    result.files = std::move(out).files();
    return result;
}

}  // namespace sgqgan
