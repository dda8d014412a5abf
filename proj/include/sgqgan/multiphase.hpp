#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <json.hpp>

#include "sgqgan/interference.hpp"
#include "sgqgan/phase_scene.hpp"
#include "sgqgan/spsa.hpp"
#include "sgqgan/trajectory.hpp"

namespace sgqgan {

// Mean cosine similarity mapped to [0, 1]: (1/n) sum_k (1 + cos(psi_k - phi_k)) / 2.
double accuracy(const PhaseVector& psi, const PhaseVector& phi);

// SPSA objective for a probe phase vector: 1 - P(0), maximal when phi = psi.
double multiphase_objective(HomMeasurementModel& model, const PhaseScene& scene, const PhaseVector& probe);

inline constexpr std::size_t kDefaultMultiphaseIterations = 3000;
inline constexpr std::size_t kDefaultMultiphaseTrials = 50;

// Each phase sees only 1/n of the objective's gradient, so the phase
// estimator starts from a larger step gain (a = 30) than state learning.
GainSchedule multiphase_default_gains();

struct MultiphaseTask {
    PhaseScene scene;  // hidden psi; scene.phi is the initial probe
    GainSchedule sched = multiphase_default_gains();
    HomModelConfig model;  // rng_seed replaced per trial, as for state learning
    std::size_t iterations = kDefaultMultiphaseIterations;
    std::size_t trials = kDefaultMultiphaseTrials;
    std::uint64_t seed = 0;

    void validate() const;
};

struct MultiphaseResult {
    Trajectory trajectory;  // accuracy after each update
    std::vector<PhaseVector> final_phases;
};

struct MultiphaseTrial {
    PhaseVector final_phases;
    std::vector<double> accuracy;
};
MultiphaseTrial estimate_trial(const MultiphaseTask& task, std::size_t trial);

MultiphaseResult estimate(const MultiphaseTask& task);

// Scene files: {"n": 10, "A": [...], "sigma": 1.0, "psi": [...], "phi": [...],
// "frequencies": [{"signal":..,"idler":..,"pump":..}, ...]}. Only "n" is
// required; missing psi is drawn uniformly from `rng`, A defaults to uniform.
PhaseScene scene_from_json(const nlohmann::json& j, std::mt19937_64& rng);
nlohmann::json scene_to_json(const PhaseScene& scene);

}  // namespace sgqgan
