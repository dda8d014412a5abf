#include "sgqgan/phase_scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sgqgan/error.hpp"

namespace sgqgan {

namespace {
constexpr double kWeightSumTol = 1e-9;
}

double wrap_phase(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x + std::numbers::pi, two_pi);
    if (r <= 0.0) r += two_pi;
    return r - std::numbers::pi;
}

void PhaseScene::validate() const {
    if (weights.empty()) throw Error(ErrorKind::InvalidAmplitudes, "scene has no frequency bins");
    double total = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (!(weights[k] >= 0.0)) {
            throw Error(ErrorKind::InvalidAmplitudes, fmt::format("A[{}] = {} is negative", k, weights[k]));
        }
        total += weights[k];
    }
    if (std::abs(total - 1.0) > kWeightSumTol) {
        throw Error(ErrorKind::InvalidAmplitudes, fmt::format("bin weights sum to {}, expected 1", total));
    }
    if (psi.size() != weights.size() || phi.size() != weights.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    fmt::format("scene has {} weights, {} true phases, {} probe phases", weights.size(),
                                psi.size(), phi.size()));
    }
    if (!(sigma >= 0.0)) throw Error(ErrorKind::DomainError, fmt::format("sigma = {} must be >= 0", sigma));
    if (frequencies) {
        if (frequencies->size() != weights.size()) {
            throw Error(ErrorKind::LengthMismatch, "bin frequency list does not match bin count");
        }
        for (std::size_t k = 0; k < frequencies->size(); ++k) {
            const auto& f = (*frequencies)[k];
            if (std::abs(f.signal + f.idler - f.pump) > 1e-9 * std::max(1.0, std::abs(f.pump))) {
                throw Error(ErrorKind::DomainError,
                            fmt::format("bin {} violates energy conservation: {} + {} != {}", k, f.signal,
                                        f.idler, f.pump));
            }
        }
    }
}

PhaseScene uniform_scene(std::size_t n, double sigma, std::mt19937_64& rng) {
    if (n == 0) throw Error(ErrorKind::RangeError, "scene needs n >= 1");
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    PhaseScene scene;
    scene.weights.assign(n, 1.0 / static_cast<double>(n));
    scene.sigma = sigma;
    scene.psi.resize(n);
    // uniform_real_distribution yields [-pi, pi); -pi wraps to +pi.
    for (auto& p : scene.psi) p = wrap_phase(phase(rng));
    scene.phi.assign(n, 0.0);
    return scene;
}

}  // namespace sgqgan
