#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sgqgan/error.hpp"

namespace sgqgan {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kZeroNormTol = 1e-12;

// Amplitudes before normalization, e.g. |phi_k + alpha_k g_k>.
struct UnnormalizedVector {
    CVector amps;
};

enum class Gauge {
    Canonical,  // first significant amplitude made real and non-negative
    Keep,       // global phase left as supplied
};

// Unit-norm complex amplitude vector, d >= 2.
class PureState {
public:
    PureState() = default;

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amps() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

    // Computational-basis state |index> in dimension d.
    static PureState basis(std::size_t d, std::size_t index);

    friend PureState normalize(const UnnormalizedVector& v, Gauge gauge);

private:
    explicit PureState(CVector amps) : amps_(std::move(amps)) {}
    CVector amps_;
};

// Throws ZeroVector when the norm is <= 1e-12.
PureState normalize(const UnnormalizedVector& v, Gauge gauge = Gauge::Canonical);
PureState normalize(std::initializer_list<cplx> amps, Gauge gauge = Gauge::Canonical);

PureState canonicalize(const PureState& s);

// |<a|b>|^2, clamped to [0, 1].
double overlap(const PureState& a, const PureState& b);

// |<a|b>|, the pure-state value of tr sqrt(sqrt(rho) sigma sqrt(rho)).
double root_fidelity(const PureState& a, const PureState& b);

// Bloch vector with |H> at +z and (|H>+|V>)/sqrt2 at +x.
std::array<double, 3> bloch_coords(const PureState& s);

// 2x2 unitary acting on polarization qubits.
class JonesUnitary {
public:
    JonesUnitary() : m_(Mat2::Identity()) {}
    // Throws NotUnitary unless U^dag U = I and |det U| = 1 within 1e-10.
    explicit JonesUnitary(const Mat2& m);

    const Mat2& matrix() const { return m_; }
    JonesUnitary adjoint() const { return JonesUnitary(m_.adjoint()); }

    // (*this) after `first`: the product this * first.
    JonesUnitary after(const JonesUnitary& first) const { return JonesUnitary(m_ * first.m_); }

private:
    Mat2 m_;
};

JonesUnitary hwp(double theta);
JonesUnitary qwp(double theta);

PureState apply_unitary(const JonesUnitary& u, const PureState& s);

// Named polarization states: H, V, D, A, R, L.
PureState polarization(char label);

// Comma-separated amplitudes ("0.75, 0.07+0.65i") or a single-letter
// polarization name. Renormalized on load. Throws ParseError.
PureState parse_state(std::string_view text);
cplx parse_complex(std::string_view token);

std::string format_state(const PureState& s);

// Haar-random state and unitary, used by tests and the acceptance harness.
PureState random_state(std::size_t d, std::mt19937_64& rng);
JonesUnitary random_unitary(std::mt19937_64& rng);

}  // namespace sgqgan
