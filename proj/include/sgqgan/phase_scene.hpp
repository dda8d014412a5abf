#pragma once

#include <optional>
#include <random>
#include <vector>

namespace sgqgan {

// Signal/idler/pump center frequencies of one frequency bin. Carried as
// metadata only; they never enter the coincidence probability.
struct BinFrequencies {
    double signal = 0.0;
    double idler = 0.0;
    double pump = 0.0;
};

// Frequency-bin entangled pair with per-bin phases: true phases psi_k on the
// signal photon, probe phases phi_k on the idler photon.
struct PhaseScene {
    std::vector<double> weights;  // A_k, sum to 1
    double sigma = 1.0;           // RMS bandwidth, inverse delay units
    std::vector<double> psi;
    std::vector<double> phi;
    std::optional<std::vector<BinFrequencies>> frequencies;

    std::size_t size() const { return weights.size(); }

    // Throws InvalidAmplitudes / LengthMismatch / DomainError.
    void validate() const;

    PhaseScene with_probe(std::vector<double> probe) const {
        PhaseScene s = *this;
        s.phi = std::move(probe);
        return s;
    }
};

// Map to (-pi, pi].
double wrap_phase(double x);

// A_k = 1/n, psi_k uniform on (-pi, pi], phi_k = 0.
PhaseScene uniform_scene(std::size_t n, double sigma, std::mt19937_64& rng);

}  // namespace sgqgan
