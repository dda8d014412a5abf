#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sgqgan/config.hpp"
#include "sgqgan/multiphase.hpp"
#include "sgqgan/process.hpp"
#include "sgqgan/state_learner.hpp"

namespace sgqgan {

// Task builders shared by execute() and sweep(). The multiphase scene's
// missing psi is drawn from mt19937_64(stream_seed(cfg.seed, kSceneStream)).
inline constexpr std::uint64_t kSceneStream = 2;

StateLearningTask make_learning_task(const ExperimentConfig& cfg);
MultiphaseTask make_multiphase_task(const ExperimentConfig& cfg);

struct CharacterizationRun {
    JonesUnitary hidden;
    std::vector<PureState> probes;
    std::vector<Characterization> trials;  // trial i learns with seed trial_seed(cfg.seed, i)
    std::vector<double> process_fidelity;
};
CharacterizationRun run_characterization(const ExperimentConfig& cfg);

// Mean/std across trials of the final metric (fidelity, process fidelity
// or accuracy) for one non-sweep config.
struct FinalMetric {
    double mean = 0.0;
    double std = 0.0;
};

struct SweepRow {
    std::vector<std::pair<std::string, double>> params;  // grid order
    FinalMetric metric;
};

// Cartesian grid, parameter names in lexicographic order with the first
// name varying slowest, values ascending. Every point reuses the master seed.
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);

struct ExecuteResult {
    std::vector<std::string> files;  // written paths, in write order
    FinalMetric metric;              // unset for sweeps
};

// Runs the experiment and writes <output>manifest.json plus the CSV/JSON
// artifacts for the command. Output bytes depend only on the config.
ExecuteResult execute(const ExperimentConfig& cfg);

}  // namespace sgqgan
