#include "sgqgan/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

namespace sgqgan {

double coincidence_prob_dip(double f) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw Error(ErrorKind::DomainError, fmt::format("overlap {} outside [0, 1]", f));
    }
    return (1.0 - f) / 2.0;
}

double coincidence_prob_multiphase(const PhaseScene& scene, double tau) {
    scene.validate();
    const double envelope = std::exp(-scene.sigma * scene.sigma * tau * tau);
    double p = 0.0;
    for (std::size_t k = 0; k < scene.size(); ++k) {
        p += scene.weights[k] / 2.0 * (1.0 - std::cos(scene.psi[k] - scene.phi[k]) * envelope);
    }
    return std::clamp(p, 0.0, 1.0);
}

HomMeasurementModel::HomMeasurementModel(HomModelConfig config)
    : config_(config), rng_(config.rng_seed) {
    if (config_.mode == MeasurementMode::Sampled && config_.pairs_per_setting < 1) {
        throw Error(ErrorKind::RangeError, "pairs_per_setting must be >= 1 in sampled mode");
    }
    if (!(config_.background_rate >= 0.0)) {
        throw Error(ErrorKind::RangeError,
                    fmt::format("background_rate = {} must be >= 0", config_.background_rate));
    }
}

std::uint64_t HomMeasurementModel::sample_counts(std::uint64_t trials, double p) {
    std::binomial_distribution<std::uint64_t> signal(trials, std::clamp(p, 0.0, 1.0));
    std::uint64_t counts = signal(rng_);
    if (config_.background_rate > 0.0) {
        std::poisson_distribution<std::uint64_t> background(config_.background_rate);
        counts += background(rng_);
    }
    return counts;
}

Measurement HomMeasurementModel::finish(CoincidenceRecord record) {
    record.setting_id = next_setting_++;
    if (recording_) records_.push_back(record);
    return {record.estimated_overlap, record};
}

Measurement HomMeasurementModel::measure_overlap(const PureState& true_state, const PureState& probe) {
    const double f = overlap(true_state, probe);
    CoincidenceRecord rec;
    if (config_.mode == MeasurementMode::Analytic) {
        rec.estimated_overlap = f;
        return finish(rec);
    }
    const std::uint64_t n = config_.pairs_per_setting;
    rec.counts_dip = sample_counts(n, coincidence_prob_dip(f));
    rec.counts_baseline = sample_counts(n, 0.5);
    if (rec.counts_baseline == 0) rec.counts_baseline = sample_counts(n, 0.5);
    if (rec.counts_baseline == 0) {
        throw Error(ErrorKind::DegenerateBaseline,
                    fmt::format("baseline counts were zero twice with {} pairs per setting", n));
    }
    const double ratio = static_cast<double>(rec.counts_dip) / static_cast<double>(rec.counts_baseline);
    rec.estimated_overlap = std::clamp(1.0 - ratio, 0.0, 1.0);
    return finish(rec);
}

Measurement HomMeasurementModel::measure_multiphase(const PhaseScene& scene) {
    const double p = coincidence_prob_multiphase(scene, 0.0);
    CoincidenceRecord rec;
    if (config_.mode == MeasurementMode::Analytic) {
        rec.estimated_overlap = p;
        return finish(rec);
    }
    const std::uint64_t n = config_.pairs_per_setting;
    rec.counts_dip = sample_counts(n, p);
    rec.counts_baseline = n;
    const double norm = static_cast<double>(n) + config_.background_rate;
    rec.estimated_overlap = std::clamp(static_cast<double>(rec.counts_dip) / norm, 0.0, 1.0);
    return finish(rec);
}

void write_records_csv(std::ostream& os, const std::vector<CoincidenceRecord>& records) {
    os << "setting_id,counts_dip,counts_baseline,estimated_overlap\n";
    for (const auto& r : records) {
        os << fmt::format("{},{},{},{:.17g}\n", r.setting_id, r.counts_dip, r.counts_baseline,
                          r.estimated_overlap);
    }
}

}  // namespace sgqgan
