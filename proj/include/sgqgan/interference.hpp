#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "sgqgan/phase_scene.hpp"
#include "sgqgan/quantum.hpp"

namespace sgqgan {

enum class MeasurementMode { Analytic, Sampled };

struct HomModelConfig {
    MeasurementMode mode = MeasurementMode::Analytic;
    std::uint64_t pairs_per_setting = 1000;
    double background_rate = 0.0;  // mean accidental coincidences per setting
    std::uint64_t rng_seed = 0;

    bool operator==(const HomModelConfig&) const = default;
};

struct CoincidenceRecord {
    std::uint64_t setting_id = 0;
    std::uint64_t counts_dip = 0;
    std::uint64_t counts_baseline = 0;
    double estimated_overlap = 0.0;

    bool operator==(const CoincidenceRecord&) const = default;
};

struct Measurement {
    double value = 0.0;
    CoincidenceRecord record;
};

// The discriminator: a fixed HOM measurement with its own counting RNG.
// Not thread-safe; use one instance per logical thread.
class HomMeasurementModel {
public:
    explicit HomMeasurementModel(HomModelConfig config = {});

    const HomModelConfig& config() const { return config_; }

    void set_recording(bool on) { recording_ = on; }
    const std::vector<CoincidenceRecord>& records() const { return records_; }

    Measurement measure_overlap(const PureState& true_state, const PureState& probe);
    Measurement measure_multiphase(const PhaseScene& scene);

private:
    std::uint64_t sample_counts(std::uint64_t trials, double p);
    Measurement finish(CoincidenceRecord record);

    HomModelConfig config_;
    std::mt19937_64 rng_;
    std::uint64_t next_setting_ = 0;
    bool recording_ = false;
    std::vector<CoincidenceRecord> records_;
};

// Coincidence probability (1 - f)/2 of two photons with overlap f on a
// balanced beam splitter. Throws DomainError outside [0, 1].
double coincidence_prob_dip(double f);

// P(tau) = sum_k A_k/2 [1 - cos(psi_k - phi_k) exp(-sigma^2 tau^2)].
double coincidence_prob_multiphase(const PhaseScene& scene, double tau);

void write_records_csv(std::ostream& os, const std::vector<CoincidenceRecord>& records);

}  // namespace sgqgan
