#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "sgqgan/quantum.hpp"

namespace sgqgan {

// Gain schedules: alpha_k = a / (k + 1 + A)^s, beta_k = b / (k + 1)^t.
struct GainSchedule {
    double a = 3.0;
    double A = 0.0;
    double s = 0.602;
    double b = 0.1;
    double t = 0.101;

    // Throws RangeError on a non-positive gain/exponent or negative A.
    void validate() const;
    bool operator==(const GainSchedule&) const = default;
};

double alpha(const GainSchedule& sched, std::size_t k);
double beta(const GainSchedule& sched, std::size_t k);

enum class Alphabet {
    Complex4,  // {1, -1, i, -i}, for amplitude parameters
    Real2,     // {1, -1}, for phase parameters
};

struct Direction {
    Alphabet alphabet = Alphabet::Real2;
    std::vector<cplx> entries;
};

// Entries i.i.d. uniform over the alphabet.
Direction sample_direction(std::size_t dim, Alphabet alphabet, std::mt19937_64& rng);

using Gradient = std::vector<cplx>;

// g_k = (f_plus - f_minus) / (2 beta_k) * delta
Gradient gradient(double f_plus, double f_minus, double beta_k, const Direction& delta);

using PhaseVector = std::vector<double>;

// Amplitude space: probes are renormalized before they are measured.
std::pair<PureState, PureState> perturbed_pair(const PureState& point, const Direction& delta, double beta_k);
PureState step(const PureState& point, const Gradient& g, double alpha_k);

// Phase space: componentwise, the update is wrapped to (-pi, pi].
std::pair<PhaseVector, PhaseVector> perturbed_pair(const PhaseVector& point, const Direction& delta,
                                                   double beta_k);
PhaseVector step(const PhaseVector& point, const Gradient& g, double alpha_k);

template <class Point>
struct ParameterSpace;

template <>
struct ParameterSpace<PureState> {
    static constexpr Alphabet alphabet = Alphabet::Complex4;
    static std::size_t dim(const PureState& p) { return p.dim(); }
};

template <>
struct ParameterSpace<PhaseVector> {
    static constexpr Alphabet alphabet = Alphabet::Real2;
    static std::size_t dim(const PhaseVector& p) { return p.size(); }
};

struct IterationLog {
    std::size_t k = 0;
    double f_plus = 0.0;
    double f_minus = 0.0;
    Direction direction;
    double alpha_k = 0.0;
    double beta_k = 0.0;
    double post_update_metric = std::numeric_limits<double>::quiet_NaN();
};

template <class Point>
struct RunResult {
    Point final_point;
    std::vector<IterationLog> logs;
};

// Core SPSA loop. Exactly two objective calls per iteration; `observer`
// sees every iteration's log (the direction is only valid during the call).
// Errors from the objective or the update carry the iteration index.
template <class Point, class Objective, class Metric, class Observer>
Point run_with(Objective&& objective, Metric&& metric, const Point& initial, const GainSchedule& sched,
               std::size_t iterations, std::mt19937_64& rng, Observer&& observer) {
    if (iterations < 1) throw Error(ErrorKind::RangeError, "SPSA run needs at least one iteration");
    sched.validate();
    using Space = ParameterSpace<Point>;
    Point current = initial;
    IterationLog log;
    for (std::size_t k = 0; k < iterations; ++k) {
        try {
            log.k = k;
            log.alpha_k = alpha(sched, k);
            log.beta_k = beta(sched, k);
            log.direction = sample_direction(Space::dim(current), Space::alphabet, rng);
            std::pair<Point, Point> probes;
            try {
                probes = perturbed_pair(current, log.direction, log.beta_k);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ZeroVector) throw;
                log.direction = sample_direction(Space::dim(current), Space::alphabet, rng);
                probes = perturbed_pair(current, log.direction, log.beta_k);
            }
            log.f_plus = objective(probes.first);
            log.f_minus = objective(probes.second);
            current = step(current, gradient(log.f_plus, log.f_minus, log.beta_k, log.direction), log.alpha_k);
            log.post_update_metric = metric(current);
        } catch (const Error& e) {
            throw e.with_context(fmt::format("iteration {}", k));
        }
        observer(log);
    }
    return current;
}

template <class Point, class Objective, class Metric>
RunResult<Point> run(Objective&& objective, Metric&& metric, const Point& initial, const GainSchedule& sched,
                     std::size_t iterations, std::mt19937_64& rng) {
    RunResult<Point> result;
    result.logs.reserve(iterations);
    result.final_point = run_with(std::forward<Objective>(objective), std::forward<Metric>(metric), initial,
                                  sched, iterations, rng,
                                  [&](const IterationLog& log) { result.logs.push_back(log); });
    return result;
}

template <class Point, class Objective>
RunResult<Point> run(Objective&& objective, const Point& initial, const GainSchedule& sched,
                     std::size_t iterations, std::mt19937_64& rng) {
    return run(
        std::forward<Objective>(objective),
        [](const Point&) { return std::numeric_limits<double>::quiet_NaN(); }, initial, sched, iterations, rng);
}

// Columns: k,f_plus,f_minus,alpha_k,beta_k,metric
void write_iteration_log_csv(std::ostream& os, const std::vector<IterationLog>& logs);

}  // namespace sgqgan
