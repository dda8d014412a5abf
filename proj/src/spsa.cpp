#include "sgqgan/spsa.hpp"

#include <cmath>
#include <ostream>

#include "sgqgan/phase_scene.hpp"

namespace sgqgan {

namespace {

void check_dims(std::size_t point, std::size_t other, const char* what) {
    if (point != other) {
        throw Error(ErrorKind::DimensionMismatch,
                    fmt::format("{} has {} entries, parameter point has {}", what, other, point));
    }
}

}  // namespace

void GainSchedule::validate() const {
    auto require = [](bool ok, const char* name, double v) {
        if (!ok) throw Error(ErrorKind::RangeError, fmt::format("gain {} = {} out of range", name, v));
    };
    require(a > 0.0, "a", a);
    require(A >= 0.0, "A", A);
    require(s > 0.0, "s", s);
    require(b > 0.0, "b", b);
    require(t > 0.0, "t", t);
}

double alpha(const GainSchedule& sched, std::size_t k) {
    return sched.a / std::pow(static_cast<double>(k) + 1.0 + sched.A, sched.s);
}

double beta(const GainSchedule& sched, std::size_t k) {
    return sched.b / std::pow(static_cast<double>(k) + 1.0, sched.t);
}

Direction sample_direction(std::size_t dim, Alphabet alphabet, std::mt19937_64& rng) {
    static constexpr cplx complex4[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    Direction d;
    d.alphabet = alphabet;
    d.entries.resize(dim);
    std::uniform_int_distribution<int> pick(0, alphabet == Alphabet::Complex4 ? 3 : 1);
    for (auto& e : d.entries) e = complex4[pick(rng)];
    return d;
}

Gradient gradient(double f_plus, double f_minus, double beta_k, const Direction& delta) {
    const double scale = (f_plus - f_minus) / (2.0 * beta_k);
    Gradient g(delta.entries.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * delta.entries[i];
    return g;
}

std::pair<PureState, PureState> perturbed_pair(const PureState& point, const Direction& delta, double beta_k) {
    check_dims(point.dim(), delta.entries.size(), "direction");
    CVector shift(static_cast<Eigen::Index>(point.dim()));
    for (Eigen::Index i = 0; i < shift.size(); ++i) shift[i] = beta_k * delta.entries[static_cast<std::size_t>(i)];
    return {normalize(UnnormalizedVector{point.amps() + shift}),
            normalize(UnnormalizedVector{point.amps() - shift})};
}

PureState step(const PureState& point, const Gradient& g, double alpha_k) {
    check_dims(point.dim(), g.size(), "gradient");
    CVector next = point.amps();
    for (Eigen::Index i = 0; i < next.size(); ++i) next[i] += alpha_k * g[static_cast<std::size_t>(i)];
    return normalize(UnnormalizedVector{std::move(next)});
}

std::pair<PhaseVector, PhaseVector> perturbed_pair(const PhaseVector& point, const Direction& delta,
                                                   double beta_k) {
    check_dims(point.size(), delta.entries.size(), "direction");
    PhaseVector plus(point), minus(point);
    for (std::size_t i = 0; i < point.size(); ++i) {
        plus[i] += beta_k * delta.entries[i].real();
        minus[i] -= beta_k * delta.entries[i].real();
    }
    return {std::move(plus), std::move(minus)};
}

PhaseVector step(const PhaseVector& point, const Gradient& g, double alpha_k) {
    check_dims(point.size(), g.size(), "gradient");
    PhaseVector next(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) next[i] = wrap_phase(point[i] + alpha_k * g[i].real());
    return next;
}

void write_iteration_log_csv(std::ostream& os, const std::vector<IterationLog>& logs) {
    os << "k,f_plus,f_minus,alpha_k,beta_k,metric\n";
    for (const auto& l : logs) {
        os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", l.k, l.f_plus, l.f_minus, l.alpha_k,
                          l.beta_k, l.post_update_metric);
    }
}

}  // namespace sgqgan
