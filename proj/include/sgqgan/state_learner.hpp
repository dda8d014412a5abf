#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sgqgan/interference.hpp"
#include "sgqgan/quantum.hpp"
#include "sgqgan/spsa.hpp"
#include "sgqgan/trajectory.hpp"

namespace sgqgan {

struct NamedTarget {
    std::string name;                 // "psi_t1" ... "psi_t6"
    std::array<cplx, 2> quoted;       // coefficients of |H>, |V> as quoted
    PureState state;                  // renormalized
};

// The six single-qubit targets, renormalized from two-decimal amplitudes.
const std::vector<NamedTarget>& builtin_targets();

// Looks up "psi_t1".."psi_t6"; anything else is parsed as a state literal.
PureState resolve_target(std::string_view spec);

struct StateLearningTask {
    PureState target;
    PureState initial = polarization('V');
    GainSchedule sched;
    // mode, pair budget and background. rng_seed is replaced per trial by
    // stream_seed(trial_seed(seed, trial), kMeasurementStream).
    HomModelConfig model;
    std::size_t iterations = 20;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    bool keep_logs = false;  // keep IterationLogs and CoincidenceRecords

    void validate() const;
};

struct LearningResult {
    Trajectory trajectory;                       // root fidelity after each update
    std::vector<PureState> final_states;         // per trial
    std::vector<std::vector<IterationLog>> logs;           // when keep_logs
    std::vector<std::vector<CoincidenceRecord>> records;   // when keep_logs
};

// Runs one seeded SPSA trial; objective is the measured overlap with the target.
struct TrialOutcome {
    PureState final_state;
    std::vector<double> fidelity;
    std::vector<IterationLog> logs;
    std::vector<CoincidenceRecord> records;
};
TrialOutcome learn_trial(const StateLearningTask& task, std::size_t trial);

// All trials, fanned out over configured_threads(). If any trial fails the
// thrown Error lists one line per failed trial.
LearningResult learn(const StateLearningTask& task);

}  // namespace sgqgan
